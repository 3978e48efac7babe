// Stationary-point search for the dual function: concave maximization over
// {G(sigma) >= 0} (solve_plus) and deterministic multi-start Newton root
// finding on grad Pi_d (solve_minus / enumerate_critical). Multi-start runs
// are independent; results merge in start-index order so output is
// seed-deterministic regardless of thread interleaving (CDT_THREADS).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdt/dual.hpp"

namespace cdt {

struct CoordBounds {
  Vec lo;
  Vec hi;
};

struct SolverOptions {
  double stat_tol = 1e-10;  // gradient inf-norm convergence
  int max_iter = 200;
  int starts = 64;
  uint64_t seed = 42;
  std::optional<CoordBounds> grid_bounds;  // multi-start box; default derived
  double step_shrink = 0.5;
  double dedup_tol = 1e-6;
  int enum_cap = 4;  // enumerate_critical refuses m+p above this
};

CoordBounds default_grid_bounds(const ProblemInstance& inst, double scale);

struct BoundaryReport {
  DualPoint point;
  Vec x;  // min-norm G^+ f at the boundary point
  double pi_value = 0.0;
  double pid_value = 0.0;
  double projected_residual = 0.0;
  std::vector<int> active_lower;  // flat dual coordinates at their V*_a bound
  bool psd_boundary = false;      // lambda_min(G) == 0 active
  Inertia g_inertia;
};

enum class PlusStatus { Interior, Boundary, NotFound };

struct PlusResult {
  PlusStatus status = PlusStatus::NotFound;
  std::optional<StationaryPair> pair;
  std::optional<BoundaryReport> boundary;
  std::vector<double> pid_history;  // accepted iterate values, nondecreasing
  int iterations = 0;
};

// Damped Newton with active-set reduction and a feasibility line search that
// bisects exactly onto the lambda_min(G) = 0 boundary when blocked. The
// default start sits one unit above the V*_a bounds and is inflated along
// (1,..,1) until G is positive definite; pass `start` to override it.
PlusResult solve_plus(const ProblemInstance& inst, const SolverOptions& opts,
                      const std::optional<Vec>& start = std::nullopt);

struct RejectedPoint {
  DualPoint point;
  double grad_residual = 0.0;
  double gap = 0.0;
  std::string reason;
};

struct CriticalSet {
  std::vector<StationaryPair> pairs;  // admissible, deduplicated
  std::vector<BoundaryReport> boundary_points;
  std::vector<RejectedPoint> rejected;  // converged but inadmissible (singular G etc.)
  struct Diagnostics {
    int starts = 0;
    int converged = 0;
    int dedup_merged = 0;
    int plus_iterations = 0;
  } diagnostics;
};

// Multi-start Newton retaining only points with G(sigma) negative definite.
CriticalSet solve_minus(const ProblemInstance& inst, const SolverOptions& opts);

// solve_plus plus widened multi-start retaining every converged root
// regardless of G inertia. Throws DomainError when m+p exceeds enum_cap.
CriticalSet enumerate_critical(const ProblemInstance& inst, const SolverOptions& opts);

// Damped Newton on grad Pi; used to polish homotopy limits and by oracles.
std::optional<Vec> polish_primal(const ProblemInstance& inst, Vec x0,
                                 double tol = 1e-11, int max_iter = 120);

}  // namespace cdt
