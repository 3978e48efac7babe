#include <doctest.h>

#include <cmath>

#include "cdt/catalog.hpp"
#include "cdt/solver.hpp"
#include "cdt/triality.hpp"
#include "oracles.hpp"

using namespace cdt;
using oracles::close_vec;

namespace {

StationaryPair pair_at(const ProblemInstance& inst, const DualPoint& s) {
  StationaryPair p = make_stationary_pair(inst, s);
  REQUIRE(pair_admissible(p));
  return p;
}

// n=3, m=p=1 instance whose dual keeps the ex3 factor structure plus one
// uncovered always-negative direction; its (15.3498.., 3.3909..) root is a
// dual local min with m+p < n.
ProblemInstance saddle_primal_instance() {
  ProblemInstance inst;
  inst.n = 3;
  inst.a = Matrix::diag({-16.0, -4.0, -9.0});
  inst.exp_terms.push_back({Matrix::diag({1.0, 0.0, 0.0}), 2.0});
  inst.quartic_terms.push_back({Matrix::diag({0.0, 1.0, 0.0}), 1.0, 2.0});
  inst.f = {2.0, 2.0, 2.0};
  return inst;
}

// n=1, m=p=1 instance with an S- stationary point whose recovered x is a
// strict local min of the scalar objective (n < m+p).
ProblemInstance saddle_dual_instance() {
  ProblemInstance inst;
  inst.n = 1;
  inst.a = Matrix::diag({-16.0});
  inst.exp_terms.push_back({Matrix::diag({1.0}), 1.0});
  inst.quartic_terms.push_back({Matrix::diag({2.0}), 1.0, 50.0});
  inst.f = {9.0};
  return inst;
}

}  // namespace

TEST_CASE("classify the ex2 reference pairs") {
  const CatalogEntry e = example_catalog("ex2");
  const TrialityVerdict v1 = classify(e.instance, pair_at(e.instance, e.expected[0].sigma_bar));
  CHECK(v1.label == Label::GlobalMin);
  CHECK(v1.dual_set == DualSet::S_plus);
  CHECK(v1.det_nondegenerate);

  const TrialityVerdict v2 = classify(e.instance, pair_at(e.instance, e.expected[1].sigma_bar));
  CHECK(v2.label == Label::LocalMaxPair);
  CHECK(v2.dual_set == DualSet::S_minus);
}

TEST_CASE("classify the ex3 paired local minimum (n = m+p)") {
  const CatalogEntry e = example_catalog("ex3");
  const StationaryPair p = pair_at(e.instance, e.expected[2].sigma_bar);
  CHECK(close_vec(p.x_bar, e.expected[2].x_bar, 1e-8));
  const TrialityVerdict v = classify(e.instance, p);
  CHECK(v.label == Label::LocalMinPair);
  // Both Hessians are PD under the determinant condition.
  CHECK(v.primal_hessian_inertia.positive_definite());
  CHECK(v.dual_hessian_inertia.positive_definite());
}

TEST_CASE("paired local maxima have both Hessians negative semidefinite") {
  for (const auto& id : {"ex2", "ex3"}) {
    const CatalogEntry e = example_catalog(id);
    for (const auto& exp : e.expected) {
      if (exp.label != Label::LocalMaxPair) continue;
      const StationaryPair p = pair_at(e.instance, exp.sigma_bar);
      const TrialityVerdict v = classify(e.instance, p);
      REQUIRE(v.label == Label::LocalMaxPair);
      CHECK(v.primal_hessian_inertia.negative_semidefinite());
      CHECK(v.dual_hessian_inertia.negative_semidefinite());
      const EigenSym ep = sym_eigen(hess_primal(e.instance, p.x_bar), 1e-8);
      CHECK(ep.values.back() < -1e-8);  // strict local max of the objective
    }
  }
}

TEST_CASE("classify rejects unadmitted pairs") {
  const CatalogEntry e = example_catalog("ex1");
  const StationaryPair off = make_stationary_pair(e.instance, {{2.0}, {1.0}});
  CHECK_THROWS_AS(classify(e.instance, off), DomainError);
}

TEST_CASE("primal saddle case: subspace-restricted minimality (m+p < n)") {
  const ProblemInstance inst = saddle_primal_instance();
  REQUIRE(validate_instance(inst).ok);

  SolverOptions opts;
  const CriticalSet cs = enumerate_critical(inst, opts);
  const StationaryPair* found = nullptr;
  for (const auto& p : cs.pairs) {
    if (!p.g.inertia.negative_definite()) continue;
    if (inertia_of(hess_dual(inst, p.sigma_bar)).positive_definite()) {
      found = &p;
      break;
    }
  }
  REQUIRE(found != nullptr);
  CHECK(std::fabs(found->sigma_bar.tau[0] - 15.34981976568548) < 1e-7);
  CHECK(std::fabs(found->sigma_bar.sigma[0] - 3.390906302031545) < 1e-7);

  const TrialityVerdict v = classify(inst, *found);
  CHECK(v.label == Label::PrimalSaddle_DualMin);
  REQUIRE(v.subspace.has_value());

  const Matrix l = *v.subspace;
  CHECK(l.rows() == 3);
  CHECK(l.cols() == 2);
  // Full column rank.
  const Vec sv = svd(l).singular_values();
  CHECK(sv.back() > 1e-8);

  // L^t Hess L is PD while the Hessian itself is indefinite: a true saddle
  // with restricted minimality.
  const Matrix hp = hess_primal(inst, found->x_bar);
  CHECK(inertia_of(hp).indefinite());
  const Matrix restricted = transpose(l) * hp * l;
  CHECK(inertia_of(symmetrize(restricted)).positive_definite());

  // Sampling oracle on the restricted directions.
  Rng rng(41);
  const double pi0 = eval_primal(inst, found->x_bar);
  for (int s = 0; s < 1000; ++s) {
    const double t1 = rng.uniform(-1e-3, 1e-3);
    const double t2 = rng.uniform(-1e-3, 1e-3);
    Vec x = found->x_bar;
    for (int i = 0; i < 3; ++i) x[i] += t1 * l(i, 0) + t2 * l(i, 1);
    CHECK(eval_primal(inst, x) >= pi0 - 1e-12 * (1.0 + std::fabs(pi0)));
  }

  // Requesting the subspace when n = m+p is a precondition error.
  const CatalogEntry ex3 = example_catalog("ex3");
  const StationaryPair square = pair_at(ex3.instance, ex3.expected[2].sigma_bar);
  CHECK_THROWS_AS(saddle_subspace_primal(ex3.instance, square), DomainError);
}

TEST_CASE("dual saddle case: subspace-restricted minimality (n < m+p)") {
  const ProblemInstance inst = saddle_dual_instance();
  REQUIRE(validate_instance(inst).ok);

  SolverOptions opts;
  opts.grid_bounds = CoordBounds{{std::exp(-1.0), -50.0}, {200.0, 60.0}};
  opts.starts = 256;
  const CriticalSet cs = enumerate_critical(inst, opts);
  const StationaryPair* found = nullptr;
  for (const auto& p : cs.pairs) {
    if (!p.g.inertia.negative_definite()) continue;
    if (inertia_of(hess_primal(inst, p.x_bar)).positive_definite()) {
      found = &p;
      break;
    }
  }
  REQUIRE(found != nullptr);

  const TrialityVerdict v = classify(inst, *found);
  CHECK(v.label == Label::DualSaddle_PrimalMin);
  REQUIRE(v.subspace.has_value());

  const Matrix q = *v.subspace;
  CHECK(q.rows() == 2);
  CHECK(q.cols() == 1);
  const Vec sv = svd(q).singular_values();
  CHECK(sv.back() > 1e-8);

  const Matrix hd = hess_dual(inst, found->sigma_bar);
  CHECK(inertia_of(hd).indefinite());  // dual saddle
  const Matrix restricted = transpose(q) * hd * q;
  CHECK(inertia_of(symmetrize(restricted)).positive_semidefinite());

  // Sampling oracle along the dual subspace.
  Rng rng(42);
  const double pid0 = eval_dual(inst, found->sigma_bar);
  for (int s = 0; s < 1000; ++s) {
    const double t = rng.uniform(-1e-3, 1e-3);
    DualPoint sb = found->sigma_bar;
    sb.tau[0] += t * q(0, 0);
    sb.sigma[0] += t * q(1, 0);
    CHECK(eval_dual(inst, sb) >= pid0 - 1e-12 * (1.0 + std::fabs(pid0)));
  }

  const CatalogEntry ex3 = example_catalog("ex3");
  const StationaryPair square = pair_at(ex3.instance, ex3.expected[2].sigma_bar);
  CHECK_THROWS_AS(saddle_subspace_dual(ex3.instance, square), DomainError);
}

TEST_CASE("rank of F at S- points with PSD dual Hessian") {
  // Lemma-backed rank fact: rank(F) = min(n, m+p) there.
  const ProblemInstance inst3 = saddle_primal_instance();
  const CriticalSet cs3 = enumerate_critical(inst3, SolverOptions{});
  for (const auto& p : cs3.pairs) {
    if (!p.g.inertia.negative_definite()) continue;
    if (!inertia_of(hess_dual(inst3, p.sigma_bar)).positive_semidefinite()) continue;
    const Vec sv = svd(p.f_mat).singular_values();
    int rank = 0;
    for (double s : sv)
      if (s > 1e-9 * (1.0 + sv.front())) ++rank;
    CHECK(rank == std::min(inst3.n, inst3.dual_dim()));
  }

  const CatalogEntry ex3 = example_catalog("ex3");
  const StationaryPair p = pair_at(ex3.instance, ex3.expected[2].sigma_bar);
  const Vec sv = svd(p.f_mat).singular_values();
  CHECK(sv.back() > 1e-9 * (1.0 + sv.front()));  // full rank n = m+p
}

TEST_CASE("boundary-degenerate pairs are labeled as such") {
  // f = 0 instance engineered so the lone stationary point has G = 0.
  ProblemInstance inst;
  inst.n = 2;
  inst.a = Matrix::diag({-std::exp(-1.0), 0.0});
  inst.exp_terms.push_back({Matrix::diag({1.0, 0.0}), 1.0});
  inst.quartic_terms.push_back({Matrix::diag({0.0, 1.0}), 1.0, 0.0});
  inst.f = {0.0, 0.0};
  const DualPoint s = {{std::exp(-1.0)}, {0.0}};
  const StationaryPair p = make_stationary_pair(inst, s);
  REQUIRE(pair_admissible(p));
  CHECK(p.g.inertia.n_zero == 2);
  const TrialityVerdict v = classify(inst, p);
  CHECK(v.label == Label::BoundaryDegenerate);
  CHECK(v.dual_set == DualSet::Boundary);
}

TEST_CASE("verdict labels never contradict their inertia evidence") {
  for (const auto& id : catalog_ids()) {
    const CatalogEntry e = example_catalog(id);
    const CriticalSet cs = enumerate_critical(e.instance, SolverOptions{});
    for (const auto& p : cs.pairs) {
      const TrialityVerdict v = classify(e.instance, p);
      CHECK(verdict_consistent(v, e.instance.n, e.instance.dual_dim()));
    }
  }
  const ProblemInstance sp = saddle_primal_instance();
  for (const auto& p : enumerate_critical(sp, SolverOptions{}).pairs)
    CHECK(verdict_consistent(classify(sp, p), sp.n, sp.dual_dim()));
}

TEST_CASE("global-min verdicts survive the brute-force grid certificate") {
  for (const auto& id : {"ex1", "ex2", "ex3"}) {
    const CatalogEntry e = example_catalog(id);
    const StationaryPair p = pair_at(e.instance, e.expected[0].sigma_bar);
    REQUIRE(classify(e.instance, p).label == Label::GlobalMin);

    // Box covering all reference critical points with generous margin.
    double lo = -1.0, hi = 1.0;
    for (const auto& exp : e.expected)
      for (double c : exp.x_bar) {
        lo = std::min(lo, c - 3.0);
        hi = std::max(hi, c + 3.0);
      }
    const auto bf = oracles::brute_force_min_2d(e.instance, lo, hi, lo, hi, 601);
    CHECK(bf.best_value >= p.pi_value - 1e-6);
    CHECK(close_vec(bf.best_x, p.x_bar, 1e-5));
  }
}
