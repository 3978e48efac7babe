// Problem instances of the exponential-plus-quartic class
//   Pi(x) = sum_i exp(x'B_i x/2 - alpha_i)
//         + sum_j (beta_j/2) (x'C_j x/2 - theta_j)^2
//         + x'A x/2 - f'x
// with A symmetric and every B_i, C_j symmetric PSD. Instances are immutable
// after construction; all evaluations are pure.
#pragma once

#include <string>
#include <vector>

#include "cdt/linalg.hpp"

namespace cdt {

struct ExpTerm {
  Matrix b;
  double alpha = 0.0;
};

struct QuarticTerm {
  Matrix c;
  double beta = 1.0;
  double theta = 0.0;
};

struct ProblemInstance {
  int n = 0;
  Matrix a;
  std::vector<ExpTerm> exp_terms;
  std::vector<QuarticTerm> quartic_terms;
  Vec f;

  int m() const { return static_cast<int>(exp_terms.size()); }
  int p() const { return static_cast<int>(quartic_terms.size()); }
  int dual_dim() const { return m() + p(); }
};

enum class ConeCondition { Verified, HeuristicPass, Unverified };

struct ValidationReport {
  bool ok = false;
  ConeCondition cone_condition = ConeCondition::Unverified;
  std::vector<std::string> violations;
};

// Tolerances pinned for the whole library.
namespace tolerances {
inline constexpr double sym_tol = 1e-10;
inline constexpr double psd_tol_rel = 1e-10;    // lambda_min >= -psd_tol_rel*(1+||M||_2)
inline constexpr double inertia_tol_rel = 1e-9; // zero band 1e-9*(1+||M||_2)
inline constexpr double colspace_tol = 1e-9;
inline constexpr double dom_tol = 1e-9;
inline constexpr double gap_tol = 1e-9;         // relative duality-gap admission
inline constexpr double stat_admit_tol = 1e-8;  // gradient residual admission
inline constexpr double pinv_cutoff_rel = 1e-12;
inline constexpr double det_nondeg_rel = 1e-8;
}  // namespace tolerances

// Structural checks: symmetry, PSD of each B_i/C_j, beta_j > 0, dimensions.
// The cone condition (the generated cone contains a PD matrix) is only tested
// by the sufficient all-ones heuristic lambda_min(sum B + sum C) > 0 and never
// fails validation on its own.
ValidationReport validate_instance(const ProblemInstance& inst);

double eval_primal(const ProblemInstance& inst, const Vec& x);
Vec grad_primal(const ProblemInstance& inst, const Vec& x);
Matrix hess_primal(const ProblemInstance& inst, const Vec& x);

// Geometric operator values: eps_i = x'B_i x/2 - alpha_i, gam_j = x'C_j x/2 - theta_j.
struct LambdaValues {
  Vec eps;
  Vec gamma;
};
LambdaValues lambda_map(const ProblemInstance& inst, const Vec& x);

// Canonical dual variable sigma(x): tau_i = exp(eps_i), sigma_j = beta_j*gam_j.
struct DualPoint {
  Vec tau;
  Vec sigma;
};
DualPoint sigma_of_x(const ProblemInstance& inst, const Vec& x);

}  // namespace cdt
