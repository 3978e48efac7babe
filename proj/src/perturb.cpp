#include "cdt/perturb.hpp"

#include <cmath>

namespace cdt {

PerturbationSchedule default_schedule(const ProblemInstance& inst) {
  PerturbationSchedule s;
  s.mode = PerturbationMode::InstanceHomotopy;
  s.max_stages = 12;
  double nk = 32.0;
  for (int k = 0; k < s.max_stages; ++k) {
    s.n_sequence.push_back(nk);
    nk *= 2.0;
  }
  const double scale = std::max(1.0, spectral_norm_sym(inst.a));
  s.direction_e_mat = scale * Matrix::identity(inst.n);
  const double fn = norm2(inst.f);
  s.direction_e_vec.assign(inst.n, 0.0);
  if (fn > 0.0) {
    for (int i = 0; i < inst.n; ++i) s.direction_e_vec[i] = inst.f[i] / fn;
  } else {
    const double w = 1.0 / std::sqrt(static_cast<double>(inst.n));
    s.direction_e_vec.assign(inst.n, w);
  }
  return s;
}

GMatrix perturb_g(const ProblemInstance& inst, const DualPoint& s, double alpha, const Matrix& d) {
  if (!(alpha > 0.0)) throw DomainError("perturb_g: alpha must be positive");
  if (d.rows() != inst.n || d.cols() != inst.n) throw DimensionError("perturb_g: D is not n x n");
  if (!is_symmetric(d, 1e-8) || !inertia_of(d).positive_definite())
    throw DomainError("perturb_g: D must be symmetric positive definite");
  if (!in_dual_domain(inst, s)) throw DomainError("perturb_g: dual point outside V*_a");

  GMatrix out;
  out.matrix = assemble_g(inst, s) + alpha * d;
  out.inertia = inertia_of(out.matrix);
  const Matrix gp = pinv(out.matrix, tolerances::pinv_cutoff_rel);
  const Vec r = axpy(-1.0, matvec(out.matrix, matvec(gp, inst.f)), inst.f);
  out.col_space_ok = norm2(r) <= tolerances::colspace_tol * (1.0 + norm2(inst.f));
  return out;
}

ProblemInstance homotopy_stage_instance(const ProblemInstance& inst,
                                        const PerturbationSchedule& sched, int stage) {
  ProblemInstance out = inst;
  if (sched.mode == PerturbationMode::InstanceHomotopy) {
    const double n = sched.n_sequence.at(stage);
    if (!(n > 0.0)) throw DomainError("homotopy stage parameter must be positive");
    out.a = inst.a - (1.0 / n) * sched.direction_e_mat;
    out.f = axpy(1.0 / n, sched.direction_e_vec, inst.f);
  } else {
    const double alpha = sched.alpha_sequence.at(stage);
    if (!(alpha > 0.0)) throw DomainError("g-shift stage alpha must be positive");
    out.a = inst.a + alpha * sched.direction_e_mat;
  }
  return out;
}

static void check_schedule(const ProblemInstance& inst, const PerturbationSchedule& sched) {
  if (sched.mode == PerturbationMode::InstanceHomotopy) {
    if (sched.n_sequence.empty()) throw DomainError("homotopy schedule has no stages");
    for (size_t k = 1; k < sched.n_sequence.size(); ++k)
      if (!(sched.n_sequence[k] > sched.n_sequence[k - 1]))
        throw DomainError("n_sequence must be strictly increasing");
    if (norm2(sched.direction_e_vec) == 0.0)
      throw DomainError("direction_e must be nonzero for the data homotopy");
  } else {
    if (sched.alpha_sequence.empty()) throw DomainError("g-shift schedule has no stages");
    for (size_t k = 1; k < sched.alpha_sequence.size(); ++k)
      if (!(sched.alpha_sequence[k] < sched.alpha_sequence[k - 1]))
        throw DomainError("alpha_sequence must be strictly decreasing");
  }
  if (sched.direction_e_mat.rows() != inst.n || sched.direction_e_mat.cols() != inst.n)
    throw DimensionError("direction_E is not n x n");
  if (!inertia_of(sched.direction_e_mat).positive_definite())
    throw DomainError("direction_E must be positive definite");
}

HomotopyTrace homotopy_solve(const ProblemInstance& inst, const PerturbationSchedule& sched,
                             const SolverOptions& opts, double homotopy_tol) {
  check_schedule(inst, sched);
  HomotopyTrace trace;

  const int stages = std::min<int>(sched.max_stages,
                                   sched.mode == PerturbationMode::InstanceHomotopy
                                       ? static_cast<int>(sched.n_sequence.size())
                                       : static_cast<int>(sched.alpha_sequence.size()));
  Vec prev_x;
  for (int k = 0; k < stages; ++k) {
    HomotopyStage st;
    st.parameter = sched.mode == PerturbationMode::InstanceHomotopy ? sched.n_sequence[k]
                                                                    : sched.alpha_sequence[k];
    const ProblemInstance stage_inst = homotopy_stage_instance(inst, sched, k);
    try {
      const PlusResult r = solve_plus(stage_inst, opts);
      st.status = r.status;
      if (r.status == PlusStatus::Interior) {
        st.solved = true;
        st.sigma_bar = r.pair->sigma_bar;
        st.x_bar = r.pair->x_bar;
        st.gap = duality_gap(*r.pair);
        st.g_inertia = r.pair->g.inertia;
      } else if (r.status == PlusStatus::Boundary) {
        st.sigma_bar = r.boundary->point;
        st.x_bar = r.boundary->x;
        st.g_inertia = r.boundary->g_inertia;
      }
    } catch (const std::exception&) {
      st.solved = false;
    }
    trace.stages.push_back(st);

    if (st.solved) {
      if (!prev_x.empty()) {
        double diff = 0.0;
        for (size_t i = 0; i < prev_x.size(); ++i)
          diff = std::max(diff, std::fabs(st.x_bar[i] - prev_x[i]));
        if (diff <= homotopy_tol) {
          trace.converged = true;
          prev_x = st.x_bar;
          break;
        }
      }
      prev_x = st.x_bar;
    }
  }

  if (!prev_x.empty()) {
    trace.limit_estimate = prev_x;
    if (auto polished = polish_primal(inst, prev_x, 1e-11, 200)) {
      trace.limit_estimate = *polished;
      trace.polished = true;
    }
    trace.polished_grad_inf = norm_inf(grad_primal(inst, trace.limit_estimate));
    trace.limit_value = eval_primal(inst, trace.limit_estimate);
  }
  return trace;
}

}  // namespace cdt
