#include "cdt/problem.hpp"

#include <cmath>

namespace cdt {

static double quad_form(const Matrix& m, const Vec& x) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < m.cols(); ++j) row += m(i, j) * x[j];
    s += x[i] * row;
  }
  return s;
}

static void require_dim(const ProblemInstance& inst, const Vec& x) {
  if (static_cast<int>(x.size()) != inst.n)
    throw DimensionError("point dimension does not match instance n");
}

ValidationReport validate_instance(const ProblemInstance& inst) {
  ValidationReport rep;
  auto fail = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };

  if (inst.n < 1) fail("n must be positive");
  if (inst.a.rows() != inst.n || inst.a.cols() != inst.n) fail("A is not n x n");
  if (static_cast<int>(inst.f.size()) != inst.n) fail("f is not length n");
  if (inst.m() + inst.p() < 1) fail("instance needs at least one exp or quartic term");

  auto check_psd_sym = [&](const Matrix& mat, const std::string& name) {
    if (mat.rows() != inst.n || mat.cols() != inst.n) {
      fail(name + " is not n x n");
      return;
    }
    if (!is_symmetric(mat, tolerances::sym_tol)) {
      fail(name + " not symmetric");
      return;
    }
    const EigenSym e = sym_eigen(mat, 1e-8);
    const double lmin = e.values.empty() ? 0.0 : e.values.front();
    const double lmax = e.values.empty() ? 0.0 : std::fabs(e.values.back());
    const double tol = tolerances::psd_tol_rel * (1.0 + std::max(lmax, std::fabs(lmin)));
    if (lmin < -tol) fail(name + " not PSD (lambda_min = " + std::to_string(lmin) + ")");
  };

  if (inst.a.rows() == inst.n && inst.a.cols() == inst.n && !is_symmetric(inst.a, tolerances::sym_tol))
    fail("A not symmetric");
  for (int i = 0; i < inst.m(); ++i) check_psd_sym(inst.exp_terms[i].b, "B_" + std::to_string(i + 1));
  for (int j = 0; j < inst.p(); ++j) {
    check_psd_sym(inst.quartic_terms[j].c, "C_" + std::to_string(j + 1));
    if (!(inst.quartic_terms[j].beta > 0.0)) fail("beta_" + std::to_string(j + 1) + " must be positive");
  }

  rep.ok = rep.violations.empty();

  rep.cone_condition = ConeCondition::Unverified;
  if (rep.ok) {
    Matrix sum(inst.n, inst.n);
    for (const auto& t : inst.exp_terms) sum = sum + t.b;
    for (const auto& t : inst.quartic_terms) sum = sum + t.c;
    const EigenSym e = sym_eigen(sum, 1e-8);
    if (!e.values.empty() && e.values.front() > 0.0) rep.cone_condition = ConeCondition::HeuristicPass;
  }
  return rep;
}

double eval_primal(const ProblemInstance& inst, const Vec& x) {
  require_dim(inst, x);
  double v = 0.5 * quad_form(inst.a, x) - dot(inst.f, x);
  for (const auto& t : inst.exp_terms) v += std::exp(0.5 * quad_form(t.b, x) - t.alpha);
  for (const auto& t : inst.quartic_terms) {
    const double g = 0.5 * quad_form(t.c, x) - t.theta;
    v += 0.5 * t.beta * g * g;
  }
  return v;
}

Vec grad_primal(const ProblemInstance& inst, const Vec& x) {
  require_dim(inst, x);
  Vec g = matvec(inst.a, x);
  for (size_t i = 0; i < g.size(); ++i) g[i] -= inst.f[i];
  for (const auto& t : inst.exp_terms) {
    const double w = std::exp(0.5 * quad_form(t.b, x) - t.alpha);
    const Vec bx = matvec(t.b, x);
    for (size_t i = 0; i < g.size(); ++i) g[i] += w * bx[i];
  }
  for (const auto& t : inst.quartic_terms) {
    const double w = t.beta * (0.5 * quad_form(t.c, x) - t.theta);
    const Vec cx = matvec(t.c, x);
    for (size_t i = 0; i < g.size(); ++i) g[i] += w * cx[i];
  }
  return g;
}

Matrix hess_primal(const ProblemInstance& inst, const Vec& x) {
  require_dim(inst, x);
  Matrix h = inst.a;
  for (const auto& t : inst.exp_terms) {
    const double w = std::exp(0.5 * quad_form(t.b, x) - t.alpha);
    const Vec bx = matvec(t.b, x);
    for (int i = 0; i < inst.n; ++i)
      for (int j = 0; j < inst.n; ++j) h(i, j) += w * (bx[i] * bx[j] + t.b(i, j));
  }
  for (const auto& t : inst.quartic_terms) {
    const double lam = 0.5 * quad_form(t.c, x) - t.theta;
    const Vec cx = matvec(t.c, x);
    for (int i = 0; i < inst.n; ++i)
      for (int j = 0; j < inst.n; ++j) h(i, j) += t.beta * (cx[i] * cx[j] + lam * t.c(i, j));
  }
  return h;
}

LambdaValues lambda_map(const ProblemInstance& inst, const Vec& x) {
  require_dim(inst, x);
  LambdaValues lv;
  lv.eps.reserve(inst.m());
  lv.gamma.reserve(inst.p());
  for (const auto& t : inst.exp_terms) lv.eps.push_back(0.5 * quad_form(t.b, x) - t.alpha);
  for (const auto& t : inst.quartic_terms) lv.gamma.push_back(0.5 * quad_form(t.c, x) - t.theta);
  return lv;
}

DualPoint sigma_of_x(const ProblemInstance& inst, const Vec& x) {
  const LambdaValues lv = lambda_map(inst, x);
  DualPoint s;
  s.tau.reserve(lv.eps.size());
  s.sigma.reserve(lv.gamma.size());
  for (double e : lv.eps) s.tau.push_back(std::exp(e));
  for (size_t j = 0; j < lv.gamma.size(); ++j) s.sigma.push_back(inst.quartic_terms[j].beta * lv.gamma[j]);
  return s;
}

}  // namespace cdt
