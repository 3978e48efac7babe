#include "cdt/json_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cdt {

using nlohmann::json;

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

Matrix parse_matrix(const json& j, int n, const std::string& name) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(name + " must be an " + std::to_string(n) + "-row matrix");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(name + " row " + std::to_string(i) + " has wrong length");
    for (int k = 0; k < n; ++k) {
      if (!row[k].is_number()) throw ParseError(name + " has a non-numeric entry");
      m(i, k) = row[k].get<double>();
    }
  }
  return m;
}

Vec parse_vector(const json& j, int n, const std::string& name) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(name + " must be a length-" + std::to_string(n) + " array");
  Vec v(n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_number()) throw ParseError(name + " has a non-numeric entry");
    v[i] = j[i].get<double>();
  }
  return v;
}

void append_matrix(std::string& out, const Matrix& m) {
  out += '[';
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += json_number(m(i, j));
    }
    out += ']';
  }
  out += ']';
}

void append_vector(std::string& out, const Vec& v) {
  out += '[';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += json_number(v[i]);
  }
  out += ']';
}

}  // namespace

ProblemInstance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance file must be a JSON object");
  if (j.contains("format_version") && j["format_version"] != 1)
    throw ParseError("unsupported format_version");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("instance requires an integer field n");

  ProblemInstance inst;
  inst.n = j["n"].get<int>();
  if (inst.n < 1) throw ParseError("n must be positive");

  inst.a = j.contains("A") ? parse_matrix(j["A"], inst.n, "A") : Matrix(inst.n, inst.n);
  inst.f = j.contains("f") ? parse_vector(j["f"], inst.n, "f") : Vec(inst.n, 0.0);

  if (j.contains("exp_terms")) {
    if (!j["exp_terms"].is_array()) throw ParseError("exp_terms must be an array");
    for (const auto& t : j["exp_terms"]) {
      if (!t.contains("B") || !t.contains("alpha")) throw ParseError("exp term requires B and alpha");
      ExpTerm term;
      term.b = parse_matrix(t["B"], inst.n, "B");
      term.alpha = t["alpha"].get<double>();
      inst.exp_terms.push_back(std::move(term));
    }
  }
  if (j.contains("quartic_terms")) {
    if (!j["quartic_terms"].is_array()) throw ParseError("quartic_terms must be an array");
    for (const auto& t : j["quartic_terms"]) {
      if (!t.contains("C") || !t.contains("beta") || !t.contains("theta"))
        throw ParseError("quartic term requires C, beta and theta");
      QuarticTerm term;
      term.c = parse_matrix(t["C"], inst.n, "C");
      term.beta = t["beta"].get<double>();
      term.theta = t["theta"].get<double>();
      inst.quartic_terms.push_back(std::move(term));
    }
  }
  if (inst.m() + inst.p() < 1) throw ParseError("instance needs at least one exp or quartic term");
  return inst;
}

std::string serialize_instance(const ProblemInstance& inst) {
  std::string out = "{\"format_version\":1,\"n\":" + std::to_string(inst.n) + ",\"A\":";
  append_matrix(out, inst.a);
  out += ",\"exp_terms\":[";
  for (int i = 0; i < inst.m(); ++i) {
    if (i) out += ',';
    out += "{\"B\":";
    append_matrix(out, inst.exp_terms[i].b);
    out += ",\"alpha\":" + json_number(inst.exp_terms[i].alpha) + "}";
  }
  out += "],\"quartic_terms\":[";
  for (int i = 0; i < inst.p(); ++i) {
    if (i) out += ',';
    out += "{\"C\":";
    append_matrix(out, inst.quartic_terms[i].c);
    out += ",\"beta\":" + json_number(inst.quartic_terms[i].beta);
    out += ",\"theta\":" + json_number(inst.quartic_terms[i].theta) + "}";
  }
  out += "],\"f\":";
  append_vector(out, inst.f);
  out += "}";
  return out;
}

SensorNetwork parse_network(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("network JSON parse failure: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("sensors"))
    throw ParseError("network requires dim and sensors");
  SensorNetwork net;
  net.dim = j["dim"].get<int>();
  net.sensors = j["sensors"].get<int>();
  if (j.contains("anchors")) {
    for (const auto& a : j["anchors"]) {
      Anchor an;
      an.index = a.at("index").get<int>();
      an.pos = parse_vector(a.at("pos"), net.dim, "anchor pos");
      net.anchors.push_back(std::move(an));
    }
  }
  if (j.contains("distances")) {
    for (const auto& e : j["distances"]) {
      DistancePair dp;
      dp.i = e.at("i").get<int>();
      dp.j = e.at("j").get<int>();
      dp.d = e.at("d").get<double>();
      net.distances.push_back(dp);
    }
  }
  return net;
}

std::string serialize_network(const SensorNetwork& net) {
  std::string out = "{\"dim\":" + std::to_string(net.dim) +
                    ",\"sensors\":" + std::to_string(net.sensors) + ",\"anchors\":[";
  for (size_t i = 0; i < net.anchors.size(); ++i) {
    if (i) out += ',';
    out += "{\"index\":" + std::to_string(net.anchors[i].index) + ",\"pos\":";
    append_vector(out, net.anchors[i].pos);
    out += "}";
  }
  out += "],\"distances\":[";
  for (size_t i = 0; i < net.distances.size(); ++i) {
    if (i) out += ',';
    out += "{\"i\":" + std::to_string(net.distances[i].i) +
           ",\"j\":" + std::to_string(net.distances[i].j) +
           ",\"d\":" + json_number(net.distances[i].d) + "}";
  }
  out += "]}";
  return out;
}

std::string instance_digest(const ProblemInstance& inst) {
  const std::string s = serialize_instance(inst);
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
}

void apply_solver_overrides(const std::string& text, SolverOptionsPatch& patch) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    return;
  }
  if (!j.is_object() || !j.contains("solver") || !j["solver"].is_object()) return;
  const auto& s = j["solver"];
  if (s.contains("seed")) {
    patch.has_seed = true;
    patch.seed = s["seed"].get<uint64_t>();
  }
  if (s.contains("starts")) {
    patch.has_starts = true;
    patch.starts = s["starts"].get<int>();
  }
  if (s.contains("tol")) {
    patch.has_tol = true;
    patch.tol = s["tol"].get<double>();
  }
  if (s.contains("max_iter")) {
    patch.has_max_iter = true;
    patch.max_iter = s["max_iter"].get<int>();
  }
}

}  // namespace cdt
