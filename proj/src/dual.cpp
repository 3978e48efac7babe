#include "cdt/dual.hpp"

#include <cmath>

namespace cdt {

VStarBounds dual_bounds(const ProblemInstance& inst) {
  VStarBounds b;
  b.tau_lo.reserve(inst.m());
  b.sigma_lo.reserve(inst.p());
  for (const auto& t : inst.exp_terms) b.tau_lo.push_back(std::exp(-t.alpha));
  for (const auto& t : inst.quartic_terms) b.sigma_lo.push_back(-t.beta * t.theta);
  return b;
}

bool in_dual_domain(const ProblemInstance& inst, const DualPoint& s, double dom_tol) {
  if (static_cast<int>(s.tau.size()) != inst.m() || static_cast<int>(s.sigma.size()) != inst.p())
    return false;
  const VStarBounds b = dual_bounds(inst);
  for (int i = 0; i < inst.m(); ++i)
    if (!(s.tau[i] > 0.0) || s.tau[i] < b.tau_lo[i] - dom_tol) return false;
  for (int j = 0; j < inst.p(); ++j)
    if (s.sigma[j] < b.sigma_lo[j] - dom_tol) return false;
  return true;
}

Matrix assemble_g(const ProblemInstance& inst, const DualPoint& s) {
  if (static_cast<int>(s.tau.size()) != inst.m() || static_cast<int>(s.sigma.size()) != inst.p())
    throw DimensionError("dual point does not match instance (m, p)");
  Matrix g = inst.a;
  for (int i = 0; i < inst.m(); ++i)
    for (int r = 0; r < inst.n; ++r)
      for (int c = 0; c < inst.n; ++c) g(r, c) += s.tau[i] * inst.exp_terms[i].b(r, c);
  for (int j = 0; j < inst.p(); ++j)
    for (int r = 0; r < inst.n; ++r)
      for (int c = 0; c < inst.n; ++c) g(r, c) += s.sigma[j] * inst.quartic_terms[j].c(r, c);
  return g;
}

GMatrix g_matrix(const ProblemInstance& inst, const DualPoint& s) {
  if (!in_dual_domain(inst, s)) throw DomainError("dual point outside V*_a");
  GMatrix out;
  out.matrix = assemble_g(inst, s);
  out.inertia = inertia_of(out.matrix);
  const Matrix gp = pinv(out.matrix, tolerances::pinv_cutoff_rel);
  const Vec r = axpy(-1.0, matvec(out.matrix, matvec(gp, inst.f)), inst.f);
  out.col_space_ok = norm2(r) <= tolerances::colspace_tol * (1.0 + norm2(inst.f));
  return out;
}

namespace {

struct DualWork {
  Matrix g;
  Matrix gpinv;
  Vec x;  // G^+ f
};

DualWork dual_work(const ProblemInstance& inst, const DualPoint& s, bool require_colspace) {
  DualWork w;
  w.g = assemble_g(inst, s);
  w.gpinv = pinv(w.g, tolerances::pinv_cutoff_rel);
  w.x = matvec(w.gpinv, inst.f);
  if (require_colspace) {
    const Vec r = axpy(-1.0, matvec(w.g, w.x), inst.f);
    if (norm2(r) > tolerances::colspace_tol * (1.0 + norm2(inst.f)))
      throw DomainError("dual point outside S_a: f not in Col(G)");
  }
  return w;
}

double conjugate_terms(const ProblemInstance& inst, const DualPoint& s) {
  double v = 0.0;
  for (int i = 0; i < inst.m(); ++i) {
    if (!(s.tau[i] > 0.0)) throw DomainError("tau must be strictly positive");
    v += s.tau[i] * std::log(s.tau[i]) - s.tau[i] + inst.exp_terms[i].alpha * s.tau[i];
  }
  for (int j = 0; j < inst.p(); ++j) {
    const auto& t = inst.quartic_terms[j];
    v += s.sigma[j] * s.sigma[j] / (2.0 * t.beta) + t.theta * s.sigma[j];
  }
  return v;
}

}  // namespace

double eval_dual(const ProblemInstance& inst, const DualPoint& s) {
  const DualWork w = dual_work(inst, s, true);
  return -0.5 * dot(inst.f, w.x) - conjugate_terms(inst, s);
}

Vec grad_dual(const ProblemInstance& inst, const DualPoint& s) {
  const DualWork w = dual_work(inst, s, true);
  Vec g;
  g.reserve(inst.dual_dim());
  for (int i = 0; i < inst.m(); ++i) {
    const Vec bx = matvec(inst.exp_terms[i].b, w.x);
    g.push_back(0.5 * dot(w.x, bx) - std::log(s.tau[i]) - inst.exp_terms[i].alpha);
  }
  for (int j = 0; j < inst.p(); ++j) {
    const auto& t = inst.quartic_terms[j];
    const Vec cx = matvec(t.c, w.x);
    g.push_back(0.5 * dot(w.x, cx) - s.sigma[j] / t.beta - t.theta);
  }
  return g;
}

Matrix f_columns(const ProblemInstance& inst, const Vec& x) {
  Matrix f(inst.n, inst.dual_dim());
  int col = 0;
  for (const auto& t : inst.exp_terms) {
    const Vec bx = matvec(t.b, x);
    for (int i = 0; i < inst.n; ++i) f(i, col) = bx[i];
    ++col;
  }
  for (const auto& t : inst.quartic_terms) {
    const Vec cx = matvec(t.c, x);
    for (int i = 0; i < inst.n; ++i) f(i, col) = cx[i];
    ++col;
  }
  return f;
}

Vec d_diag(const ProblemInstance& inst, const DualPoint& s) {
  Vec d;
  d.reserve(inst.dual_dim());
  for (int i = 0; i < inst.m(); ++i) d.push_back(s.tau[i]);
  for (int j = 0; j < inst.p(); ++j) d.push_back(inst.quartic_terms[j].beta);
  return d;
}

Matrix hess_dual(const ProblemInstance& inst, const DualPoint& s) {
  const DualWork w = dual_work(inst, s, true);
  const Matrix f = f_columns(inst, w.x);
  Matrix h = -1.0 * (transpose(f) * w.gpinv * f);
  const Vec d = d_diag(inst, s);
  for (int k = 0; k < inst.dual_dim(); ++k) h(k, k) -= 1.0 / d[k];
  return symmetrize(h);
}

Vec recover_primal(const ProblemInstance& inst, const DualPoint& s) {
  return dual_work(inst, s, true).x;
}

double total_complementary(const ProblemInstance& inst, const Vec& x, const DualPoint& s) {
  if (static_cast<int>(x.size()) != inst.n) throw DimensionError("x does not match instance n");
  if (!in_dual_domain(inst, s)) throw DomainError("dual point outside V*_a");
  const Matrix g = assemble_g(inst, s);
  const Vec gx = matvec(g, x);
  return 0.5 * dot(x, gx) - dot(inst.f, x) - conjugate_terms(inst, s);
}

StationaryPair make_stationary_pair(const ProblemInstance& inst, const DualPoint& s) {
  StationaryPair pair;
  pair.sigma_bar = s;
  pair.g = g_matrix(inst, s);
  const Matrix gp = pinv(pair.g.matrix, tolerances::pinv_cutoff_rel);
  pair.x_bar = matvec(gp, inst.f);
  pair.f_mat = f_columns(inst, pair.x_bar);
  pair.d = d_diag(inst, s);
  pair.pi_value = eval_primal(inst, pair.x_bar);
  pair.pid_value = -0.5 * dot(inst.f, pair.x_bar) - conjugate_terms(inst, s);
  pair.grad_residual = norm_inf(grad_dual(inst, s));
  return pair;
}

double duality_gap(const StationaryPair& pair) { return std::fabs(pair.pi_value - pair.pid_value); }

bool pair_admissible(const StationaryPair& pair, double gap_tol, double stat_tol) {
  return pair.grad_residual <= stat_tol &&
         duality_gap(pair) <= gap_tol * (1.0 + std::fabs(pair.pi_value));
}

Vec flatten(const DualPoint& s) {
  Vec v;
  v.reserve(s.tau.size() + s.sigma.size());
  v.insert(v.end(), s.tau.begin(), s.tau.end());
  v.insert(v.end(), s.sigma.begin(), s.sigma.end());
  return v;
}

DualPoint unflatten(const ProblemInstance& inst, const Vec& v) {
  if (static_cast<int>(v.size()) != inst.dual_dim())
    throw DimensionError("flat dual vector does not match m+p");
  DualPoint s;
  s.tau.assign(v.begin(), v.begin() + inst.m());
  s.sigma.assign(v.begin() + inst.m(), v.end());
  return s;
}

}  // namespace cdt
