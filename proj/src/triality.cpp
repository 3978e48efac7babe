#include "cdt/triality.hpp"

#include <cmath>
#include <limits>

namespace cdt {

const char* label_name(Label l) {
  switch (l) {
    case Label::GlobalMin: return "GlobalMin";
    case Label::LocalMaxPair: return "LocalMaxPair";
    case Label::LocalMinPair: return "LocalMinPair";
    case Label::PrimalSaddle_DualMin: return "PrimalSaddle_DualMin";
    case Label::DualSaddle_PrimalMin: return "DualSaddle_PrimalMin";
    case Label::BoundaryDegenerate: return "BoundaryDegenerate";
    case Label::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

const char* dual_set_name(DualSet s) {
  switch (s) {
    case DualSet::S_plus: return "S+";
    case DualSet::S_minus: return "S-";
    case DualSet::Indefinite: return "indefinite";
    case DualSet::Boundary: return "boundary";
  }
  return "indefinite";
}

namespace {

Matrix fdf_t(const StationaryPair& pair) {
  // F D F^t
  const Matrix& f = pair.f_mat;
  Matrix s(f.rows(), f.rows());
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.rows(); ++j) {
      double acc = 0.0;
      for (int k = 0; k < f.cols(); ++k) acc += f(i, k) * pair.d[k] * f(j, k);
      s(i, j) = acc;
    }
  return s;
}

}  // namespace

Matrix saddle_subspace_primal(const ProblemInstance& inst, const StationaryPair& pair) {
  const int n = inst.n, d = inst.dual_dim();
  if (d >= n) throw DomainError("saddle_subspace_primal requires m+p < n");
  if (!pair.g.inertia.negative_definite())
    throw DomainError("saddle_subspace_primal requires G(sigma) negative definite");
  const Matrix hd = hess_dual(inst, pair.sigma_bar);
  if (!inertia_of(hd).positive_semidefinite())
    throw DomainError("saddle_subspace_primal requires the dual Hessian PSD");

  const CongruencePair cg = congruence_diagonalize(pair.g.matrix, fdf_t(pair));
  Matrix l(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) l(i, j) = cg.t(i, j);
  return l;
}

Matrix saddle_subspace_dual(const ProblemInstance& inst, const StationaryPair& pair) {
  const int n = inst.n, d = inst.dual_dim();
  if (n >= d) throw DomainError("saddle_subspace_dual requires n < m+p");
  if (!pair.g.inertia.negative_definite())
    throw DomainError("saddle_subspace_dual requires G(sigma) negative definite");
  const Matrix hp = hess_primal(inst, pair.x_bar);
  if (!inertia_of(hp).positive_semidefinite())
    throw DomainError("saddle_subspace_dual requires the primal Hessian PSD");

  // Dual Hessian splits as P + S with P = -D^{-1} < 0 and
  // S = F^t (-G^{-1}) F >= 0 of rank n; same congruence construction.
  Matrix p(d, d);
  for (int k = 0; k < d; ++k) p(k, k) = -1.0 / pair.d[k];
  const Matrix gp = pinv(pair.g.matrix, tolerances::pinv_cutoff_rel);
  const Matrix s = symmetrize(-1.0 * (transpose(pair.f_mat) * gp * pair.f_mat));

  const CongruencePair cg = congruence_diagonalize(p, s);
  Matrix q(d, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = cg.t(i, j);
  return q;
}

TrialityVerdict classify(const ProblemInstance& inst, const StationaryPair& pair) {
  if (!pair_admissible(pair))
    throw DomainError("pair not admitted: duality gap or gradient residual above tolerance");

  TrialityVerdict v;
  v.g_inertia = pair.g.inertia;

  const Matrix hp = hess_primal(inst, pair.x_bar);
  v.primal_hessian_inertia = inertia_of(hp);
  const Matrix hd = hess_dual(inst, pair.sigma_bar);
  v.dual_hessian_inertia = inertia_of(hd);

  const EigenSym ep = sym_eigen(hp, 1e-8);
  double abs_min = std::numeric_limits<double>::infinity(), abs_max = 0.0;
  for (double lam : ep.values) {
    abs_min = std::min(abs_min, std::fabs(lam));
    abs_max = std::max(abs_max, std::fabs(lam));
  }
  v.det_nondegenerate = abs_min > tolerances::det_nondeg_rel * (1.0 + abs_max);

  const int n = inst.n, d = inst.dual_dim();

  if (pair.g.inertia.n_zero > 0) {
    v.dual_set = DualSet::Boundary;
    v.label = Label::BoundaryDegenerate;
    v.note = "G(sigma) singular within tolerance";
    return v;
  }
  if (pair.g.inertia.indefinite()) {
    v.dual_set = DualSet::Indefinite;
    v.label = Label::Unclassified;
    v.note = "G(sigma) indefinite: outside both dual regimes";
    return v;
  }

  if (pair.g.inertia.positive_definite()) {
    v.dual_set = DualSet::S_plus;
    if (!v.det_nondegenerate) {
      v.label = Label::Unclassified;
      v.note = "primal Hessian nearly singular";
      return v;
    }
    v.label = Label::GlobalMin;
    return v;
  }

  // G negative definite from here on.
  v.dual_set = DualSet::S_minus;
  if (!v.det_nondegenerate) {
    v.label = Label::Unclassified;
    v.note = "primal Hessian nearly singular";
    return v;
  }

  if (v.dual_hessian_inertia.negative_semidefinite()) {
    v.label = Label::LocalMaxPair;
    return v;
  }
  if (v.dual_hessian_inertia.positive_semidefinite()) {
    if (n == d) {
      v.label = Label::LocalMinPair;
      return v;
    }
    if (d < n) {
      v.label = Label::PrimalSaddle_DualMin;
      v.subspace = saddle_subspace_primal(inst, pair);
      return v;
    }
  }
  // n < m+p forces at least m+p-n negative dual-Hessian directions (the
  // -D^{-1} part on the nullspace of F^t G^+ F), so the dual-saddle case is
  // recognized by the primal side: x-bar a local minimizer.
  if (n < d && v.primal_hessian_inertia.positive_semidefinite()) {
    v.label = Label::DualSaddle_PrimalMin;
    v.subspace = saddle_subspace_dual(inst, pair);
    return v;
  }

  v.label = Label::Unclassified;
  v.note = "dual Hessian indefinite: plain saddle of the dual";
  return v;
}

bool verdict_consistent(const TrialityVerdict& v, int n, int dual_dim) {
  switch (v.label) {
    case Label::GlobalMin:
      return v.dual_set == DualSet::S_plus && v.g_inertia.n_neg == 0 && v.g_inertia.n_zero == 0;
    case Label::LocalMaxPair:
      return v.dual_set == DualSet::S_minus && v.dual_hessian_inertia.negative_semidefinite() &&
             v.primal_hessian_inertia.negative_semidefinite();
    case Label::LocalMinPair:
      return v.dual_set == DualSet::S_minus && n == dual_dim &&
             v.dual_hessian_inertia.positive_semidefinite() &&
             v.primal_hessian_inertia.positive_semidefinite();
    case Label::PrimalSaddle_DualMin:
      return v.dual_set == DualSet::S_minus && dual_dim < n &&
             v.dual_hessian_inertia.positive_semidefinite();
    case Label::DualSaddle_PrimalMin:
      return v.dual_set == DualSet::S_minus && n < dual_dim &&
             v.primal_hessian_inertia.positive_semidefinite();
    case Label::BoundaryDegenerate:
      return v.dual_set == DualSet::Boundary;
    case Label::Unclassified:
      return true;
  }
  return false;
}

}  // namespace cdt
