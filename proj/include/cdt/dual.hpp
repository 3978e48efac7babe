// Canonical dual machinery. For a dual point sigma = (tau, sigma):
//   G(sigma) = A + sum_i tau_i B_i + sum_j sigma_j C_j
//   Pi_d(sigma) = -f'G^+ f/2 - sum(tau ln tau - tau) - sum sigma^2/(2 beta)
//               - alpha'tau - theta'sigma        on S_a = { f in Col(G) }
// with exact gradient/Hessian, the analytic primal recovery x = G^+ f, the
// total complementary function Xi, and the stationary-pair record.
#pragma once

#include <optional>

#include "cdt/problem.hpp"

namespace cdt {

struct VStarBounds {
  Vec tau_lo;    // exp(-alpha_i)
  Vec sigma_lo;  // -beta_j * theta_j
};
VStarBounds dual_bounds(const ProblemInstance& inst);

bool in_dual_domain(const ProblemInstance& inst, const DualPoint& s,
                    double dom_tol = tolerances::dom_tol);

// G assembled without any domain check (solver internals).
Matrix assemble_g(const ProblemInstance& inst, const DualPoint& s);

struct GMatrix {
  Matrix matrix;
  Inertia inertia;
  bool col_space_ok = false;
};

// Throws DomainError when s lies outside V*_a.
GMatrix g_matrix(const ProblemInstance& inst, const DualPoint& s);

double eval_dual(const ProblemInstance& inst, const DualPoint& s);
Vec grad_dual(const ProblemInstance& inst, const DualPoint& s);
Matrix hess_dual(const ProblemInstance& inst, const DualPoint& s);

// Minimum-norm solution of G(s) x = f.
Vec recover_primal(const ProblemInstance& inst, const DualPoint& s);

double total_complementary(const ProblemInstance& inst, const Vec& x, const DualPoint& s);

// F(x) = [B_1 x, ..., B_m x, C_1 x, ..., C_p x]  (n x (m+p))
Matrix f_columns(const ProblemInstance& inst, const Vec& x);
// D = Diag(tau_1..tau_m, beta_1..beta_p)
Vec d_diag(const ProblemInstance& inst, const DualPoint& s);

struct StationaryPair {
  DualPoint sigma_bar;
  Vec x_bar;
  GMatrix g;
  Matrix f_mat;
  Vec d;
  double pi_value = 0.0;
  double pid_value = 0.0;
  double grad_residual = 0.0;
};

// Builds the full record at a candidate dual point (no admission check).
StationaryPair make_stationary_pair(const ProblemInstance& inst, const DualPoint& s);

double duality_gap(const StationaryPair& pair);

bool pair_admissible(const StationaryPair& pair,
                     double gap_tol = tolerances::gap_tol,
                     double stat_tol = tolerances::stat_admit_tol);

// Concatenation helpers between (tau, sigma) and flat solver vectors.
Vec flatten(const DualPoint& s);
DualPoint unflatten(const ProblemInstance& inst, const Vec& v);

}  // namespace cdt
