// Shared test oracles: central finite differences, random instance draws,
// and the brute-force grid certificate. These stay independent of the
// solver paths they cross-check.
#pragma once

#include <cmath>
#include <functional>

#include "cdt/dual.hpp"
#include "cdt/rng.hpp"
#include "cdt/solver.hpp"

namespace oracles {

using cdt::Matrix;
using cdt::ProblemInstance;
using cdt::Vec;

// Central difference gradient with step 1e-6*(1+|x_k|).
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x) {
  Vec g(x.size());
  for (size_t k = 0; k < x.size(); ++k) {
    const double h = 1e-6 * (1.0 + std::fabs(x[k]));
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    g[k] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

// Central difference of a vector field, symmetrized.
inline Matrix fd_jacobian_sym(const std::function<Vec(const Vec&)>& f, const Vec& x) {
  const int n = static_cast<int>(x.size());
  Matrix j(n, n);
  for (int k = 0; k < n; ++k) {
    const double h = 1e-6 * (1.0 + std::fabs(x[k]));
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const Vec fp = f(xp), fm = f(xm);
    for (int i = 0; i < n; ++i) j(i, k) = (fp[i] - fm[i]) / (2.0 * h);
  }
  return cdt::symmetrize(j);
}

inline Matrix random_psd(cdt::Rng& rng, int n, int rank) {
  Matrix s(n, n);
  for (int r = 0; r < rank; ++r) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
    const double w = rng.uniform(0.2, 1.5);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) += w * v[i] * v[j];
  }
  return s;
}

inline Matrix random_pd(cdt::Rng& rng, int n) {
  Matrix s = random_psd(rng, n, n + 1);
  for (int i = 0; i < n; ++i) s(i, i) += rng.uniform(0.1, 0.5);
  return s;
}

inline Matrix random_symmetric(cdt::Rng& rng, int n, double scale = 1.0) {
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = rng.uniform(-scale, scale);
  return a;
}

inline Vec random_vec(cdt::Rng& rng, int n, double scale = 1.0) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-scale, scale);
  return v;
}

// Random valid instance; full-rank B/C keep the cone heuristic passing most
// of the time.
inline ProblemInstance random_instance(cdt::Rng& rng, int max_n = 6, int max_m = 3, int max_p = 3) {
  ProblemInstance inst;
  inst.n = rng.uniform_int(1, max_n);
  int m = rng.uniform_int(0, max_m);
  int p = rng.uniform_int(0, max_p);
  if (m + p == 0) p = 1;
  inst.a = random_symmetric(rng, inst.n, 1.5);
  inst.f = random_vec(rng, inst.n, 1.0);
  for (int i = 0; i < m; ++i) {
    cdt::ExpTerm t;
    t.b = random_psd(rng, inst.n, rng.uniform_int(1, inst.n));
    t.alpha = rng.uniform(-0.5, 2.0);
    inst.exp_terms.push_back(std::move(t));
  }
  for (int j = 0; j < p; ++j) {
    cdt::QuarticTerm t;
    t.c = random_psd(rng, inst.n, rng.uniform_int(1, inst.n));
    t.beta = rng.uniform(0.5, 2.0);
    t.theta = rng.uniform(-0.5, 2.0);
    inst.quartic_terms.push_back(std::move(t));
  }
  return inst;
}

// Interior dual point from a random primal point, jittered upward so it stays
// strictly inside V*_a and G is safely nonsingular.
inline cdt::DualPoint random_interior_dual(cdt::Rng& rng, const ProblemInstance& inst) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    const Vec x = random_vec(rng, inst.n, 1.2);
    cdt::DualPoint s = cdt::sigma_of_x(inst, x);
    for (double& t : s.tau) t += rng.uniform(0.05, 1.0);
    for (double& v : s.sigma) v += rng.uniform(0.05, 1.0);
    const Matrix g = cdt::assemble_g(inst, s);
    const cdt::EigenSym e = cdt::sym_eigen(g, 1e-8);
    double min_abs = 1e300, max_abs = 0.0;
    for (double lam : e.values) {
      min_abs = std::min(min_abs, std::fabs(lam));
      max_abs = std::max(max_abs, std::fabs(lam));
    }
    if (min_abs > 1e-4 * (1.0 + max_abs)) return s;
  }
  throw std::runtime_error("could not draw an interior dual point");
}

struct BruteForceResult {
  Vec best_x;
  double best_value = 0.0;
};

// 2-D grid scan followed by a Newton polish of the best cell; the
// certificate oracle for global-minimum verdicts.
inline BruteForceResult brute_force_min_2d(const ProblemInstance& inst, double lo_x, double hi_x,
                                           double lo_y, double hi_y, int res = 601) {
  BruteForceResult out;
  out.best_value = 1e300;
  for (int r = 0; r < res; ++r) {
    const double y = lo_y + (hi_y - lo_y) * r / (res - 1);
    for (int c = 0; c < res; ++c) {
      const double x = lo_x + (hi_x - lo_x) * c / (res - 1);
      const double v = cdt::eval_primal(inst, {x, y});
      if (v < out.best_value) {
        out.best_value = v;
        out.best_x = {x, y};
      }
    }
  }
  if (auto polished = cdt::polish_primal(inst, out.best_x, 1e-11, 200)) {
    const double v = cdt::eval_primal(inst, *polished);
    if (v < out.best_value) {
      out.best_value = v;
      out.best_x = *polished;
    }
  }
  return out;
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline bool close_vec(const Vec& a, const Vec& b, double tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::fabs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace oracles
