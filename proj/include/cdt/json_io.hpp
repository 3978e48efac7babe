// Instance and network file formats (format_version 1). Parsing goes through
// nlohmann::json; writing uses a small deterministic emitter with 17
// significant digits and fixed key order so reports round-trip byte-exactly.
#pragma once

#include <cstdint>
#include <string>

#include "cdt/sensors.hpp"

namespace cdt {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Formats a double with 17 significant digits; non-finite values become null.
std::string json_number(double v);

ProblemInstance parse_instance(const std::string& text);
std::string serialize_instance(const ProblemInstance& inst);

SensorNetwork parse_network(const std::string& text);
std::string serialize_network(const SensorNetwork& net);

// FNV-1a over the canonical instance serialization, as 16 hex digits.
std::string instance_digest(const ProblemInstance& inst);

std::string read_file(const std::string& path);       // throws ParseError
void write_file(const std::string& path, const std::string& content);

// Optional "solver" object in an instance file: {"seed":..,"starts":..,
// "tol":..,"max_iter":..}; fields stay unset when absent.
struct SolverOptionsPatch {
  bool has_seed = false;
  uint64_t seed = 0;
  bool has_starts = false;
  int starts = 0;
  bool has_tol = false;
  double tol = 0.0;
  bool has_max_iter = false;
  int max_iter = 0;
};

void apply_solver_overrides(const std::string& text, SolverOptionsPatch& patch);

}  // namespace cdt
