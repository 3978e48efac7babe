// Extremum classification of admitted stationary pairs:
//   G(sigma) PSD nonsingular        -> unique global minimizer
//   G negative definite, dual Hessian <= 0 -> paired local maxima
//   G negative definite, dual Hessian >= 0 -> depends on n vs m+p:
//       n = m+p  paired local minima
//       m+p < n  primal saddle, restricted min on the span of L
//       n < m+p  dual saddle (when the primal Hessian is PSD), span of Q
// Anything else is reported honestly as unclassified/degenerate with the
// inertia evidence attached.
#pragma once

#include <optional>
#include <string>

#include "cdt/dual.hpp"

namespace cdt {

enum class Label {
  GlobalMin,
  LocalMaxPair,
  LocalMinPair,
  PrimalSaddle_DualMin,
  DualSaddle_PrimalMin,
  BoundaryDegenerate,
  Unclassified,
};

enum class DualSet { S_plus, S_minus, Indefinite, Boundary };

const char* label_name(Label l);
const char* dual_set_name(DualSet s);

struct TrialityVerdict {
  Label label = Label::Unclassified;
  DualSet dual_set = DualSet::Indefinite;
  bool det_nondegenerate = false;
  Inertia g_inertia;
  Inertia primal_hessian_inertia;
  Inertia dual_hessian_inertia;
  std::optional<Matrix> subspace;  // columns of L (primal) or Q (dual)
  std::string note;
};

// Throws DomainError when the pair is not admitted (gap/residual tolerances).
TrialityVerdict classify(const ProblemInstance& inst, const StationaryPair& pair);

// Basis L = T J from the congruence of (G, F D F^t); requires G < 0,
// dual Hessian >= 0 and m+p < n.
Matrix saddle_subspace_primal(const ProblemInstance& inst, const StationaryPair& pair);

// Mirror construction in the dual space: congruence of (-D^{-1}, F^t(-G^{-1})F);
// requires G < 0, primal Hessian >= 0 and n < m+p.
Matrix saddle_subspace_dual(const ProblemInstance& inst, const StationaryPair& pair);

// Cross-checks a verdict's label against its stored inertia evidence.
bool verdict_consistent(const TrialityVerdict& v, int n, int dual_dim);

}  // namespace cdt
