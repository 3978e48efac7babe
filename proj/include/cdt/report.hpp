// Solve report: every admitted critical pair with its verdict, boundary and
// rejected points, the optional homotopy trace, and a certified global
// minimizer when one exists. Serialization is deterministic except for the
// timings block, which always occupies a single line so callers can strip it.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdt/catalog.hpp"
#include "cdt/perturb.hpp"
#include "cdt/solver.hpp"
#include "cdt/triality.hpp"

namespace cdt {

struct ClassifiedPair {
  StationaryPair pair;
  TrialityVerdict verdict;
};

enum class CertificateKind { Triality, PerturbationSelected, None };

struct GlobalMinimizer {
  Vec x;
  double pi_value = 0.0;
  CertificateKind certificate = CertificateKind::None;
};

struct SolveReport {
  std::string tool_version;
  uint64_t seed = 0;
  std::string instance_digest;
  std::vector<ClassifiedPair> critical_pairs;
  std::vector<BoundaryReport> boundary_points;
  std::vector<RejectedPoint> rejected;
  std::optional<GlobalMinimizer> global_minimizer;
  std::optional<HomotopyTrace> homotopy_trace;
  CriticalSet::Diagnostics diagnostics;
  std::map<std::string, double> timings_ms;  // excluded from determinism
};

std::string serialize_report(const SolveReport& rep, bool include_timings = true);

// enumerate_critical -> classify -> certificate assembly. with_perturbation
// adds the homotopy fallback when no GlobalMin verdict exists.
SolveReport run_solve(const ProblemInstance& inst, const SolverOptions& opts,
                      bool with_perturbation,
                      const std::optional<PerturbationSchedule>& schedule = std::nullopt);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace cdt
