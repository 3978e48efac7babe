// Quadratic perturbation G + alpha*D for singular G, and the data homotopy
// A <- A - E/n, f <- f + e/n that restores a unique interior maximizer when
// the original dual has none (non-unique global minima). The nonzero tilt e
// is what selects one minimizer out of a degenerate set.
#pragma once

#include <optional>

#include "cdt/solver.hpp"

namespace cdt {

enum class PerturbationMode { GShift, InstanceHomotopy };

struct PerturbationSchedule {
  PerturbationMode mode = PerturbationMode::InstanceHomotopy;
  Vec n_sequence;      // increasing, for InstanceHomotopy
  Vec alpha_sequence;  // decreasing positive, for GShift
  Matrix direction_e_mat;  // E, symmetric PD
  Vec direction_e_vec;     // e, nonzero for InstanceHomotopy
  int max_stages = 12;
};

// E = I*max(1, ||A||_2); e aligned with f when f != 0, else all-ones/sqrt(n);
// n_k = 32*2^k for max_stages stages.
PerturbationSchedule default_schedule(const ProblemInstance& inst);

// G(sigma) + alpha*D with refreshed inertia and column-space flags.
// Throws DomainError for alpha <= 0 or D not positive definite.
GMatrix perturb_g(const ProblemInstance& inst, const DualPoint& s, double alpha,
                  const Matrix& d);

// The stage-k instance of the homotopy.
ProblemInstance homotopy_stage_instance(const ProblemInstance& inst,
                                        const PerturbationSchedule& sched, int stage);

struct HomotopyStage {
  double parameter = 0.0;  // n or alpha
  bool solved = false;
  PlusStatus status = PlusStatus::NotFound;
  DualPoint sigma_bar;
  Vec x_bar;
  double gap = 0.0;
  Inertia g_inertia;
};

struct HomotopyTrace {
  std::vector<HomotopyStage> stages;
  bool converged = false;      // successive x-bar differed by <= homotopy_tol
  Vec limit_estimate;          // last stage x-bar polished on the original instance
  bool polished = false;
  double polished_grad_inf = 0.0;
  double limit_value = 0.0;    // Pi at the (polished) limit on the original instance
};

HomotopyTrace homotopy_solve(const ProblemInstance& inst, const PerturbationSchedule& sched,
                             const SolverOptions& opts, double homotopy_tol = 1e-6);

}  // namespace cdt
