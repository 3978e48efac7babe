#include "cdt/report.hpp"

#include <chrono>
#include <cmath>

#include "cdt/json_io.hpp"

namespace cdt {

namespace {

void append_vec(std::string& out, const Vec& v) {
  out += '[';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += json_number(v[i]);
  }
  out += ']';
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

void append_inertia(std::string& out, const Inertia& in) {
  out += "[" + std::to_string(in.n_pos) + "," + std::to_string(in.n_zero) + "," +
         std::to_string(in.n_neg) + "]";
}

void append_dual_point(std::string& out, const DualPoint& s) {
  out += "\"tau\":";
  append_vec(out, s.tau);
  out += ",\"sigma\":";
  append_vec(out, s.sigma);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string serialize_report(const SolveReport& rep, bool include_timings) {
  std::string out = "{\n";
  out += "\"format_version\":1,\n";
  out += "\"tool_version\":\"" + rep.tool_version + "\",\n";
  out += "\"seed\":" + std::to_string(rep.seed) + ",\n";
  out += "\"instance_digest\":\"" + rep.instance_digest + "\",\n";

  out += "\"critical_pairs\":[";
  for (size_t i = 0; i < rep.critical_pairs.size(); ++i) {
    const auto& cp = rep.critical_pairs[i];
    if (i) out += ',';
    out += "\n{";
    append_dual_point(out, cp.pair.sigma_bar);
    out += ",\"x\":";
    append_vec(out, cp.pair.x_bar);
    out += ",\"pi\":" + json_number(cp.pair.pi_value);
    out += ",\"pid\":" + json_number(cp.pair.pid_value);
    out += ",\"gap\":" + json_number(duality_gap(cp.pair));
    out += ",\"grad_residual\":" + json_number(cp.pair.grad_residual);
    out += ",\"g_inertia\":";
    append_inertia(out, cp.pair.g.inertia);
    out += ",\"col_space_ok\":";
    out += cp.pair.g.col_space_ok ? "true" : "false";
    out += ",\"verdict\":{\"label\":\"";
    out += label_name(cp.verdict.label);
    out += "\",\"dual_set\":\"";
    out += dual_set_name(cp.verdict.dual_set);
    out += "\",\"det_nondegenerate\":";
    out += cp.verdict.det_nondegenerate ? "true" : "false";
    out += ",\"primal_hessian_inertia\":";
    append_inertia(out, cp.verdict.primal_hessian_inertia);
    out += ",\"dual_hessian_inertia\":";
    append_inertia(out, cp.verdict.dual_hessian_inertia);
    if (cp.verdict.subspace) {
      out += ",\"subspace\":";
      append_matrix(out, *cp.verdict.subspace);
    }
    if (!cp.verdict.note.empty()) out += ",\"note\":\"" + escape(cp.verdict.note) + "\"";
    out += "}}";
  }
  out += "],\n";

  out += "\"boundary_points\":[";
  for (size_t i = 0; i < rep.boundary_points.size(); ++i) {
    const auto& b = rep.boundary_points[i];
    if (i) out += ',';
    out += "\n{";
    append_dual_point(out, b.point);
    out += ",\"x\":";
    append_vec(out, b.x);
    out += ",\"pi\":" + json_number(b.pi_value);
    out += ",\"pid\":" + json_number(b.pid_value);
    out += ",\"projected_residual\":" + json_number(b.projected_residual);
    out += ",\"active_lower\":[";
    for (size_t k = 0; k < b.active_lower.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(b.active_lower[k]);
    }
    out += "],\"psd_boundary\":";
    out += b.psd_boundary ? "true" : "false";
    out += ",\"g_inertia\":";
    append_inertia(out, b.g_inertia);
    out += "}";
  }
  out += "],\n";

  out += "\"rejected\":[";
  for (size_t i = 0; i < rep.rejected.size(); ++i) {
    const auto& r = rep.rejected[i];
    if (i) out += ',';
    out += "\n{";
    append_dual_point(out, r.point);
    out += ",\"grad_residual\":" + json_number(r.grad_residual);
    out += ",\"gap\":" + json_number(r.gap);
    out += ",\"reason\":\"" + escape(r.reason) + "\"}";
  }
  out += "],\n";

  out += "\"global_minimizer\":";
  if (rep.global_minimizer) {
    out += "{\"x\":";
    append_vec(out, rep.global_minimizer->x);
    out += ",\"pi\":" + json_number(rep.global_minimizer->pi_value);
    out += ",\"certificate\":\"";
    out += rep.global_minimizer->certificate == CertificateKind::Triality ? "triality"
                                                                          : "perturbation-selected";
    out += "\"}";
  } else {
    out += "null";
  }
  out += ",\n";

  out += "\"homotopy_trace\":";
  if (rep.homotopy_trace) {
    const auto& t = *rep.homotopy_trace;
    out += "{\"stages\":[";
    for (size_t i = 0; i < t.stages.size(); ++i) {
      const auto& st = t.stages[i];
      if (i) out += ',';
      out += "\n{\"parameter\":" + json_number(st.parameter);
      out += ",\"solved\":";
      out += st.solved ? "true" : "false";
      out += ",";
      append_dual_point(out, st.sigma_bar);
      out += ",\"x\":";
      append_vec(out, st.x_bar);
      out += ",\"gap\":" + json_number(st.gap);
      out += ",\"g_inertia\":";
      append_inertia(out, st.g_inertia);
      out += "}";
    }
    out += "],\"converged\":";
    out += t.converged ? "true" : "false";
    out += ",\"limit_estimate\":";
    append_vec(out, t.limit_estimate);
    out += ",\"polished\":";
    out += t.polished ? "true" : "false";
    out += ",\"polished_grad_inf\":" + json_number(t.polished_grad_inf);
    out += ",\"limit_value\":" + json_number(t.limit_value);
    out += "}";
  } else {
    out += "null";
  }
  out += ",\n";

  out += "\"diagnostics\":{\"starts\":" + std::to_string(rep.diagnostics.starts) +
         ",\"converged\":" + std::to_string(rep.diagnostics.converged) +
         ",\"dedup_merged\":" + std::to_string(rep.diagnostics.dedup_merged) +
         ",\"plus_iterations\":" + std::to_string(rep.diagnostics.plus_iterations) + "}";

  if (include_timings) {
    out += "\n,\"timings\":{";
    bool first = true;
    for (const auto& [k, v] : rep.timings_ms) {
      if (!first) out += ',';
      first = false;
      out += "\"" + k + "\":" + json_number(v);
    }
    out += "}";
  }
  out += "\n}\n";
  return out;
}

SolveReport run_solve(const ProblemInstance& inst, const SolverOptions& opts,
                      bool with_perturbation, const std::optional<PerturbationSchedule>& schedule) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();

  SolveReport rep;
  rep.tool_version = kToolVersion;
  rep.seed = opts.seed;
  rep.instance_digest = instance_digest(inst);

  const CriticalSet cs = enumerate_critical(inst, opts);
  const auto t1 = clock::now();

  rep.boundary_points = cs.boundary_points;
  rep.rejected = cs.rejected;
  rep.diagnostics = cs.diagnostics;

  for (const auto& pair : cs.pairs) {
    ClassifiedPair cp{pair, classify(inst, pair)};
    if (cp.verdict.label == Label::GlobalMin && !rep.global_minimizer) {
      GlobalMinimizer gm;
      gm.x = pair.x_bar;
      gm.pi_value = pair.pi_value;
      gm.certificate = CertificateKind::Triality;
      rep.global_minimizer = gm;
    }
    rep.critical_pairs.push_back(std::move(cp));
  }
  const auto t2 = clock::now();

  if (!rep.global_minimizer && with_perturbation) {
    const PerturbationSchedule sched = schedule ? *schedule : default_schedule(inst);
    HomotopyTrace trace = homotopy_solve(inst, sched, opts);
    if (!trace.limit_estimate.empty()) {
      GlobalMinimizer gm;
      gm.x = trace.limit_estimate;
      gm.pi_value = trace.limit_value;
      gm.certificate = CertificateKind::PerturbationSelected;
      rep.global_minimizer = gm;
    }
    rep.homotopy_trace = std::move(trace);
  }
  const auto t3 = clock::now();

  auto ms = [](auto a, auto b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  rep.timings_ms["enumerate"] = ms(t0, t1);
  rep.timings_ms["classify"] = ms(t1, t2);
  rep.timings_ms["perturbation"] = ms(t2, t3);
  rep.timings_ms["total"] = ms(t0, t3);
  return rep;
}

}  // namespace cdt
