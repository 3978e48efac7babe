#include "cdt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "cdt/rng.hpp"

namespace cdt {

CoordBounds default_grid_bounds(const ProblemInstance& inst, double scale) {
  CoordBounds b;
  for (const auto& t : inst.exp_terms) {
    const double lo = std::exp(-t.alpha);
    b.lo.push_back(lo);
    b.hi.push_back(lo + 10.0 * (1.0 + std::fabs(t.alpha)) * scale);
  }
  for (const auto& t : inst.quartic_terms) {
    const double lo = -t.beta * t.theta;
    b.lo.push_back(lo);
    b.hi.push_back(lo + 10.0 * t.beta * (1.0 + std::fabs(t.theta)) * scale);
  }
  return b;
}

namespace {

void require_valid(const ProblemInstance& inst) {
  const ValidationReport rep = validate_instance(inst);
  if (!rep.ok) throw DomainError("invalid instance: " + rep.violations.front());
}

void require_valid(const SolverOptions& opts) {
  if (!(opts.stat_tol > 0.0) || !(opts.dedup_tol > 0.0)) throw DomainError("tolerances must be positive");
  if (opts.starts < 1) throw DomainError("starts must be at least 1");
  if (opts.max_iter < 1) throw DomainError("max_iter must be at least 1");
  if (!(opts.step_shrink > 0.0) || !(opts.step_shrink < 1.0))
    throw DomainError("step_shrink must lie in (0, 1)");
  if (opts.grid_bounds) {
    const auto& b = *opts.grid_bounds;
    if (b.lo.size() != b.hi.size()) throw DomainError("grid_bounds lo/hi size mismatch");
    for (size_t k = 0; k < b.lo.size(); ++k)
      if (!(b.hi[k] > b.lo[k])) throw DomainError("grid_bounds must have hi > lo");
  }
}

Vec lower_bounds_flat(const ProblemInstance& inst) {
  const VStarBounds b = dual_bounds(inst);
  Vec lo = b.tau_lo;
  lo.insert(lo.end(), b.sigma_lo.begin(), b.sigma_lo.end());
  return lo;
}

Vec clamp_lo(Vec v, const Vec& lo) {
  for (size_t k = 0; k < v.size(); ++k) v[k] = std::max(v[k], lo[k]);
  return v;
}

double lambda_min_g(const ProblemInstance& inst, const Vec& flat) {
  const Matrix g = assemble_g(inst, unflatten(inst, flat));
  return sym_eigen(g, 1e-8).values.front();
}

std::optional<double> try_eval(const ProblemInstance& inst, const Vec& flat) {
  try {
    return eval_dual(inst, unflatten(inst, flat));
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

std::optional<Vec> try_grad(const ProblemInstance& inst, const Vec& flat) {
  try {
    return grad_dual(inst, unflatten(inst, flat));
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

// The term matrix that multiplies flat dual coordinate k inside G.
const Matrix& term_matrix(const ProblemInstance& inst, int k) {
  return k < inst.m() ? inst.exp_terms[k].b : inst.quartic_terms[k - inst.m()].c;
}

std::optional<Vec> newton_root(const ProblemInstance& inst, Vec v, const Vec& lo,
                               const SolverOptions& opts);

// Full Newton steps to push a converged root to the noise floor; the
// Hessian identity at a pair amplifies any leftover gradient residual.
Vec refine_root(const ProblemInstance& inst, Vec v, const Vec& lo) {
  auto g = try_grad(inst, v);
  if (!g) return v;
  double best = norm_inf(*g);
  for (int it = 0; it < 3 && best > 0.0; ++it) {
    Matrix h;
    try {
      h = hess_dual(inst, unflatten(inst, v));
    } catch (const std::exception&) {
      break;
    }
    Vec step;
    try {
      step = solve_linear(h, *g);
    } catch (const NumericError&) {
      break;
    }
    Vec trial = v;
    for (size_t k = 0; k < trial.size(); ++k) trial[k] = std::max(trial[k] - step[k], lo[k]);
    const auto gt = try_grad(inst, trial);
    if (!gt) break;
    const double nt = norm_inf(*gt);
    if (nt >= best) break;
    v = trial;
    g = gt;
    best = nt;
  }
  return v;
}

int thread_cap() {
  const char* env = std::getenv("CDT_THREADS");
  if (!env) return 1;
  const int v = std::atoi(env);
  return std::max(1, std::min(v, 16));
}

// Runs fn(i) for i in [0, count); results land in index order.
template <typename F>
void run_indexed(int count, F&& fn) {
  const int threads = std::min(thread_cap(), std::max(count, 1));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (int i = t; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

PlusResult solve_plus(const ProblemInstance& inst, const SolverOptions& opts,
                      const std::optional<Vec>& start) {
  require_valid(inst);
  require_valid(opts);
  PlusResult res;
  const int d = inst.dual_dim();
  const Vec lo = lower_bounds_flat(inst);

  // Start above the bounds, then inflate the whole dual vector until G is
  // comfortably PD; feasible whenever the cone heuristic holds.
  Vec v(d);
  if (start) {
    if (static_cast<int>(start->size()) != d) throw DimensionError("start does not match m+p");
    v = clamp_lo(*start, lo);
  } else {
    for (int i = 0; i < inst.m(); ++i) v[i] = std::exp(-inst.exp_terms[i].alpha) + 1.0;
    for (int j = 0; j < inst.p(); ++j) {
      const auto& t = inst.quartic_terms[j];
      v[inst.m() + j] = std::max(-t.beta * t.theta, 0.0) + 1.0;
    }
  }
  const double margin = 1e-6 * (1.0 + spectral_norm_sym(inst.a));
  {
    double step = 1.0;
    int tries = 0;
    while (lambda_min_g(inst, v) < margin && tries < 60) {
      for (double& vk : v) vk += step;
      step *= 2.0;
      ++tries;
    }
    if (lambda_min_g(inst, v) < margin) {
      res.status = PlusStatus::NotFound;
      return res;
    }
  }

  auto cur_opt = try_eval(inst, v);
  if (!cur_opt) {
    res.status = PlusStatus::NotFound;
    return res;
  }
  double cur = *cur_opt;
  res.pid_history.push_back(cur);

  const double act_eps = 1e-11;
  const double psd_act_rel = 1e-8;

  // Residual of the box+cone constrained maximization at v; fills the
  // active/blocked sets used for the reduced Newton step.
  auto analyze = [&](const Vec& flat, const Vec& grad, std::vector<int>& blocked,
                     std::vector<int>& active_box, bool& psd_active) {
    blocked.clear();
    active_box.clear();
    const Matrix g = assemble_g(inst, unflatten(inst, flat));
    const EigenSym eg = sym_eigen(g, 1e-8);
    const double psd_tol = psd_act_rel * (1.0 + std::fabs(eg.values.back()));
    psd_active = eg.values.front() <= psd_tol;
    Vec null_dir(inst.n);
    for (int i = 0; i < inst.n; ++i) null_dir[i] = eg.vectors(i, 0);

    double residual = 0.0;
    for (int k = 0; k < d; ++k) {
      const bool at_bound = flat[k] <= lo[k] + act_eps * (1.0 + std::fabs(lo[k]));
      bool cone_blocked = false;
      if (psd_active && grad[k] < 0.0) {
        // Moving coordinate k down pushes lambda_min below zero whenever the
        // null direction excites its term matrix.
        const Vec mu = matvec(term_matrix(inst, k), null_dir);
        cone_blocked = dot(null_dir, mu) > 1e-10;
      }
      if (at_bound) {
        active_box.push_back(k);
        if (grad[k] <= 0.0) {
          blocked.push_back(k);
          residual = std::max(residual, 0.0);
          continue;
        }
      }
      if (cone_blocked) {
        blocked.push_back(k);
        continue;
      }
      residual = std::max(residual, std::fabs(grad[k]));
    }
    return residual;
  };

  auto make_boundary = [&](const Vec& flat, double projected_residual,
                           const std::vector<int>& active_box, bool psd_active) {
    BoundaryReport b;
    b.point = unflatten(inst, flat);
    const Matrix g = assemble_g(inst, b.point);
    const Matrix gp = pinv(g, tolerances::pinv_cutoff_rel);
    b.x = matvec(gp, inst.f);
    b.pi_value = eval_primal(inst, b.x);
    const auto pid = try_eval(inst, flat);
    b.pid_value = pid ? *pid : std::numeric_limits<double>::quiet_NaN();
    b.projected_residual = projected_residual;
    b.active_lower = active_box;
    b.psd_boundary = psd_active;
    b.g_inertia = inertia_of(g);
    return b;
  };

  int it = 0;
  for (; it < opts.max_iter; ++it) {
    const auto grad_opt = try_grad(inst, v);
    if (!grad_opt) break;
    const Vec grad = *grad_opt;

    std::vector<int> blocked, active_box;
    bool psd_active = false;
    const double residual = analyze(v, grad, blocked, active_box, psd_active);

    if (residual <= opts.stat_tol) {
      if (blocked.empty() && !psd_active) {
        v = refine_root(inst, v, lo);
        StationaryPair pair = make_stationary_pair(inst, unflatten(inst, v));
        res.status = PlusStatus::Interior;
        res.pair = pair;
        res.iterations = it;
        return res;
      }
      res.status = PlusStatus::Boundary;
      res.boundary = make_boundary(v, residual, active_box, psd_active);
      res.iterations = it;
      return res;
    }

    std::vector<int> free;
    for (int k = 0; k < d; ++k)
      if (std::find(blocked.begin(), blocked.end(), k) == blocked.end()) free.push_back(k);
    if (free.empty()) {
      res.status = PlusStatus::Boundary;
      res.boundary = make_boundary(v, residual, active_box, psd_active);
      res.iterations = it;
      return res;
    }

    // Reduced Newton direction on the free coordinates.
    Vec dir(d, 0.0);
    bool have_newton = false;
    try {
      const Matrix h = hess_dual(inst, unflatten(inst, v));
      Matrix hff(static_cast<int>(free.size()), static_cast<int>(free.size()));
      Vec gf(free.size());
      for (size_t a = 0; a < free.size(); ++a) {
        gf[a] = grad[free[a]];
        for (size_t b = 0; b < free.size(); ++b) hff(static_cast<int>(a), static_cast<int>(b)) = h(free[a], free[b]);
      }
      Vec df = solve_linear(hff, gf);
      for (double& x : df) x = -x;
      double ascent = 0.0;
      for (size_t a = 0; a < free.size(); ++a) ascent += gf[a] * df[a];
      if (ascent > 0.0) {
        for (size_t a = 0; a < free.size(); ++a) dir[free[a]] = df[a];
        have_newton = true;
      }
    } catch (const std::exception&) {
    }
    if (!have_newton)
      for (int k : free) dir[k] = grad[k];  // steepest ascent fallback

    // Backtracking line search with exact bisection onto the PSD boundary.
    bool accepted = false;
    double t = 1.0;
    for (int ls = 0; ls < 80 && !accepted; ++ls) {
      Vec trial = clamp_lo(axpy(t, dir, v), lo);
      if (lambda_min_g(inst, trial) < 0.0) {
        double tlo = 0.0, thi = t;
        for (int b = 0; b < 80; ++b) {
          const double tm = 0.5 * (tlo + thi);
          if (lambda_min_g(inst, clamp_lo(axpy(tm, dir, v), lo)) >= 0.0) tlo = tm;
          else thi = tm;
        }
        trial = clamp_lo(axpy(tlo, dir, v), lo);
      }
      bool same = true;
      for (int k = 0; k < d; ++k)
        if (trial[k] != v[k]) { same = false; break; }
      if (!same) {
        const auto val = try_eval(inst, trial);
        if (val && *val >= cur) {
          v = trial;
          cur = *val;
          res.pid_history.push_back(cur);
          accepted = true;
        }
      }
      t *= opts.step_shrink;
    }

    if (!accepted) {
      // No improving feasible step left. Near the optimum the value gain
      // underflows before the gradient target is met (the dual evaluation
      // cancels large terms); finish with gradient-merit Newton steps.
      if (blocked.empty() && !psd_active) {
        if (auto polished = newton_root(inst, v, lo, opts)) {
          if (lambda_min_g(inst, *polished) >= 0.0) {
            StationaryPair pair = make_stationary_pair(inst, unflatten(inst, *polished));
            res.status = PlusStatus::Interior;
            res.pair = pair;
            res.iterations = it;
            return res;
          }
        }
        if (residual <= tolerances::stat_admit_tol) {
          StationaryPair pair = make_stationary_pair(inst, unflatten(inst, v));
          res.status = PlusStatus::Interior;
          res.pair = pair;
          res.iterations = it;
          return res;
        }
      }
      if (psd_active || !active_box.empty()) {
        res.status = PlusStatus::Boundary;
        res.boundary = make_boundary(v, residual, active_box, psd_active);
      } else {
        res.status = PlusStatus::NotFound;
      }
      res.iterations = it;
      return res;
    }
  }

  res.status = PlusStatus::NotFound;
  res.iterations = it;
  return res;
}

namespace {

// Damped Newton on grad Pi_d = 0 with a ||grad||^2 merit line search.
// Iterates stay clamped to the V*_a box (every true stationary point lies
// inside it since B, C are PSD).
std::optional<Vec> newton_root(const ProblemInstance& inst, Vec v, const Vec& lo,
                               const SolverOptions& opts) {
  const int d = inst.dual_dim();
  v = clamp_lo(std::move(v), lo);
  auto grad = try_grad(inst, v);
  if (!grad) return std::nullopt;

  for (int it = 0; it < opts.max_iter; ++it) {
    if (norm_inf(*grad) <= opts.stat_tol) return refine_root(inst, v, lo);
    Matrix h;
    try {
      h = hess_dual(inst, unflatten(inst, v));
    } catch (const DomainError&) {
      return std::nullopt;
    }
    Vec dir;
    try {
      dir = solve_linear(h, *grad);
    } catch (const NumericError&) {
      Matrix hr = h;
      const double reg = 1e-12 * (1.0 + max_abs(h));
      for (int k = 0; k < d; ++k) hr(k, k) += reg;
      try {
        dir = solve_linear(hr, *grad);
      } catch (const NumericError&) {
        return std::nullopt;
      }
    }
    for (double& x : dir) x = -x;

    const double m0 = 0.5 * dot(*grad, *grad);
    double t = 1.0;
    bool accepted = false;
    while (t >= 1e-14) {
      Vec trial = clamp_lo(axpy(t, dir, v), lo);
      bool same = true;
      for (int k = 0; k < d; ++k)
        if (trial[k] != v[k]) { same = false; break; }
      if (!same) {
        const auto gt = try_grad(inst, trial);
        if (gt && 0.5 * dot(*gt, *gt) < m0 * (1.0 - 1e-4 * t) + 1e-300) {
          v = trial;
          grad = gt;
          accepted = true;
          break;
        }
      }
      t *= opts.step_shrink;
    }
    if (!accepted) return std::nullopt;
  }
  if (norm_inf(*grad) <= opts.stat_tol) return refine_root(inst, v, lo);
  return std::nullopt;
}

struct MultistartOut {
  std::vector<Vec> roots;  // converged, in start-index order
  int converged = 0;
};

MultistartOut run_multistart(const ProblemInstance& inst, const CoordBounds& bounds,
                             const SolverOptions& opts) {
  const int d = inst.dual_dim();
  const uint64_t offset = (opts.seed % 9973ULL) + 1ULL;
  std::vector<std::optional<Vec>> slots(opts.starts);

  run_indexed(opts.starts, [&](int idx) {
    Vec start(d);
    for (int k = 0; k < d; ++k) {
      const double u = halton(static_cast<uint64_t>(idx) + offset, halton_base(k));
      start[k] = bounds.lo[k] + u * (bounds.hi[k] - bounds.lo[k]);
    }
    slots[idx] = newton_root(inst, start, bounds.lo, opts);
  });

  MultistartOut out;
  for (auto& s : slots)
    if (s) {
      out.roots.push_back(std::move(*s));
      ++out.converged;
    }
  return out;
}

bool near_existing(const Vec& v, const std::vector<Vec>& kept, double tol) {
  for (const auto& k : kept) {
    double dist = 0.0;
    for (size_t i = 0; i < v.size(); ++i) dist = std::max(dist, std::fabs(v[i] - k[i]));
    if (dist < tol) return true;
  }
  return false;
}

// Multi-scale multistart plus a completion sweep. Roots come back deduped in
// discovery order; `seeds` are known points that only participate in dedup.
std::vector<Vec> collect_roots(const ProblemInstance& inst, const SolverOptions& opts,
                               const std::vector<double>& scales, const std::vector<Vec>& seeds,
                               CriticalSet::Diagnostics& diag) {
  std::vector<Vec> kept = seeds;
  std::vector<Vec> roots;
  auto absorb = [&](const std::vector<Vec>& found) {
    for (const auto& r : found) {
      if (near_existing(r, kept, opts.dedup_tol)) {
        ++diag.dedup_merged;
        continue;
      }
      kept.push_back(r);
      roots.push_back(r);
    }
  };

  if (opts.grid_bounds) {
    const MultistartOut ms = run_multistart(inst, *opts.grid_bounds, opts);
    diag.starts += opts.starts;
    diag.converged += ms.converged;
    absorb(ms.roots);
  } else {
    for (double scale : scales) {
      const MultistartOut ms = run_multistart(inst, default_grid_bounds(inst, scale), opts);
      diag.starts += opts.starts;
      diag.converged += ms.converged;
      absorb(ms.roots);
    }
  }

  // Completion sweep: cross-combine coordinates of the roots found so far and
  // re-run Newton from the combinations. Duals with (near-)separable structure
  // have critical points at such products, and their basins can be tiny.
  const Vec lo = lower_bounds_flat(inst);
  const int d = inst.dual_dim();
  for (int round = 0; round < 2; ++round) {
    const std::vector<Vec> base = kept;
    std::vector<Vec> extra;
    for (size_t a = 0; a < base.size(); ++a) {
      for (size_t b = 0; b < base.size(); ++b) {
        if (a == b) continue;
        for (int k = 0; k < d; ++k) {
          Vec start = base[a];
          start[k] = base[b][k];
          if (near_existing(start, kept, opts.dedup_tol) ||
              near_existing(start, extra, opts.dedup_tol))
            continue;
          if (auto root = newton_root(inst, start, lo, opts)) {
            ++diag.converged;
            extra.push_back(std::move(*root));
          }
        }
      }
    }
    if (extra.empty()) break;
    absorb(extra);
  }
  return roots;
}

void build_pairs(const ProblemInstance& inst, const std::vector<Vec>& roots,
                 bool only_negative_definite, CriticalSet& out) {
  for (const auto& r : roots) {
    const DualPoint s = unflatten(inst, r);
    const Inertia gi = inertia_of(assemble_g(inst, s));
    if (only_negative_definite && !gi.negative_definite()) continue;
    StationaryPair pair = make_stationary_pair(inst, s);
    if (pair_admissible(pair)) {
      out.pairs.push_back(std::move(pair));
    } else {
      RejectedPoint rej;
      rej.point = s;
      rej.grad_residual = pair.grad_residual;
      rej.gap = duality_gap(pair);
      rej.reason = gi.n_zero > 0 ? "singular G at stationary point" : "duality gap above tolerance";
      out.rejected.push_back(std::move(rej));
    }
  }
}

}  // namespace

CriticalSet solve_minus(const ProblemInstance& inst, const SolverOptions& opts) {
  require_valid(inst);
  require_valid(opts);
  CriticalSet out;
  const std::vector<Vec> roots = collect_roots(inst, opts, {0.25, 1.0, 4.0}, {}, out.diagnostics);
  build_pairs(inst, roots, /*only_negative_definite=*/true, out);
  return out;
}

CriticalSet enumerate_critical(const ProblemInstance& inst, const SolverOptions& opts) {
  require_valid(inst);
  require_valid(opts);
  if (inst.dual_dim() > opts.enum_cap)
    throw DomainError("m+p exceeds the enumeration cap; run solve_plus/solve_minus directly");

  CriticalSet out;
  std::vector<Vec> seeds;

  const PlusResult plus = solve_plus(inst, opts);
  out.diagnostics.plus_iterations = plus.iterations;
  bool plus_interior = false;
  if (plus.status == PlusStatus::Interior) {
    plus_interior = true;
    seeds.push_back(flatten(plus.pair->sigma_bar));
    out.pairs.push_back(*plus.pair);
  } else if (plus.status == PlusStatus::Boundary) {
    out.boundary_points.push_back(*plus.boundary);
  }

  std::vector<double> scales = {0.25, 1.0, 4.0};
  if (!plus_interior) {
    scales.push_back(16.0);
    scales.push_back(64.0);
  }
  const std::vector<Vec> roots = collect_roots(inst, opts, scales, seeds, out.diagnostics);
  build_pairs(inst, roots, /*only_negative_definite=*/false, out);
  return out;
}

std::optional<Vec> polish_primal(const ProblemInstance& inst, Vec x0, double tol, int max_iter) {
  Vec g = grad_primal(inst, x0);
  for (int it = 0; it < max_iter; ++it) {
    if (norm_inf(g) <= tol) return x0;
    Matrix h = hess_primal(inst, x0);
    Vec dir;
    try {
      dir = solve_linear(h, g);
    } catch (const NumericError&) {
      const double reg = 1e-10 * (1.0 + max_abs(h));
      for (int k = 0; k < inst.n; ++k) h(k, k) += reg;
      try {
        dir = solve_linear(h, g);
      } catch (const NumericError&) {
        return std::nullopt;
      }
    }
    for (double& v : dir) v = -v;
    const double m0 = 0.5 * dot(g, g);
    double t = 1.0;
    bool accepted = false;
    while (t >= 1e-14) {
      const Vec trial = axpy(t, dir, x0);
      const Vec gt = grad_primal(inst, trial);
      if (0.5 * dot(gt, gt) < m0 * (1.0 - 1e-4 * t) + 1e-300) {
        x0 = trial;
        g = gt;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) return std::nullopt;
  }
  return norm_inf(g) <= tol ? std::optional<Vec>(x0) : std::nullopt;
}

}  // namespace cdt
