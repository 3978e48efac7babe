#include <doctest.h>

#include <cmath>

#include "cdt/linalg.hpp"
#include "oracles.hpp"

using namespace cdt;
using oracles::close_vec;

TEST_CASE("sym_eigen on fixed matrices") {
  Matrix m(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = -1.0;
  const EigenSym e = sym_eigen(m);
  CHECK(close_vec(e.values, {-1.0, 3.0}, 1e-14));

  const EigenSym ei = sym_eigen(Matrix::identity(3));
  CHECK(close_vec(ei.values, {1.0, 1.0, 1.0}, 1e-14));

  Matrix bad(2, 2);
  bad(0, 1) = 1.0;  // not symmetric
  CHECK_THROWS_AS(sym_eigen(bad), DomainError);
}

TEST_CASE("sym_eigen reconstruction on random matrices") {
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(1, 6);
    const Matrix m = oracles::random_symmetric(rng, n, 2.0);
    const EigenSym e = sym_eigen(m);
    const Matrix rec = e.vectors * Matrix::diag(e.values) * transpose(e.vectors);
    CHECK(max_abs(rec - m) <= 1e-10 * (1.0 + spectral_norm_sym(m)));
    const Matrix qtq = transpose(e.vectors) * e.vectors;
    CHECK(max_abs(qtq - Matrix::identity(n)) <= 1e-10);
    for (int k = 0; k + 1 < n; ++k) CHECK(e.values[k] <= e.values[k + 1]);
  }
}

TEST_CASE("svd fixed cases") {
  Matrix m(2, 2);
  m(0, 0) = 2.0;
  const Svd d = svd(m);
  CHECK(d.r(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d.r(1, 1) == doctest::Approx(0.0).epsilon(1e-12));

  // Orthogonal input: all singular values 1.
  const double c = std::cos(0.6), s = std::sin(0.6);
  Matrix q(2, 2);
  q(0, 0) = c;
  q(0, 1) = -s;
  q(1, 0) = s;
  q(1, 1) = c;
  const Svd dq = svd(q);
  CHECK(dq.r(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dq.r(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("svd reconstruction and orthogonality on random shapes") {
  Rng rng(202);
  for (int trial = 0; trial < 30; ++trial) {
    const int rows = rng.uniform_int(1, 6);
    const int cols = rng.uniform_int(1, 6);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(-2.0, 2.0);
    const Svd d = svd(m);
    const Matrix rec = d.u * d.r * d.e;
    CHECK(max_abs(rec - m) <= 1e-10 * (1.0 + max_abs(m)));
    CHECK(max_abs(transpose(d.u) * d.u - Matrix::identity(rows)) <= 1e-10);
    CHECK(max_abs(transpose(d.e) * d.e - Matrix::identity(cols)) <= 1e-10);
    const Vec sv = d.singular_values();
    for (size_t k = 0; k + 1 < sv.size(); ++k) CHECK(sv[k] >= sv[k + 1]);
  }
}

TEST_CASE("pinv fixed cases") {
  Rng rng(303);
  const Matrix m = oracles::random_pd(rng, 4);
  const Matrix mi = pinv(m);
  CHECK(max_abs(m * mi - Matrix::identity(4)) <= 1e-10);

  CHECK(max_abs(pinv(Matrix(3, 2))) == 0.0);

  // Rank-1 outer product vv^t has pseudo-inverse vv^t/||v||^4.
  const Vec v = {1.0, -2.0, 0.5};
  Matrix outer(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) outer(i, j) = v[i] * v[j];
  const double n2 = dot(v, v);
  const Matrix expect = (1.0 / (n2 * n2)) * outer;
  CHECK(max_abs(pinv(outer) - expect) <= 1e-12);
}

TEST_CASE("Moore-Penrose axioms on random rank-deficient matrices") {
  Rng rng(404);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = rng.uniform_int(2, 6);
    const int cols = rng.uniform_int(2, 6);
    const int max_rank = std::max(std::min(rows, cols) - 1, 1);
    const int rank = rng.uniform_int(1, max_rank);
    Matrix l(rows, rank), r(rank, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < rank; ++j) l(i, j) = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < cols; ++j) r(i, j) = rng.uniform(-1.0, 1.0);
    const Matrix a = l * r;
    const Matrix ap = pinv(a);
    const double scale = 1.0 + max_abs(a) + max_abs(ap);
    CHECK(max_abs(a * ap * a - a) <= 1e-9 * scale);
    CHECK(max_abs(ap * a * ap - ap) <= 1e-9 * scale);
    CHECK(max_abs(transpose(a * ap) - a * ap) <= 1e-9 * scale);
    CHECK(max_abs(transpose(ap * a) - ap * a) <= 1e-9 * scale);
  }
}

TEST_CASE("inertia_of") {
  const Matrix m = Matrix::diag({5.0, 0.0, -2.0});
  const Inertia in = inertia_of(m, 1e-9);
  CHECK(in.n_pos == 1);
  CHECK(in.n_zero == 1);
  CHECK(in.n_neg == 1);

  // G at the second reference point of ex2 is negative definite.
  const Matrix g2 = Matrix::diag({1.0 + 0.42157060067968 - 49.86072154366873,
                                  -16.0 + 0.42157060067968 + 2.0 * -49.86072154366873});
  const Inertia i2 = inertia_of(g2);
  CHECK(i2.n_pos == 0);
  CHECK(i2.n_zero == 0);
  CHECK(i2.n_neg == 2);

  // G at the first reference point of ex3 is positive definite.
  const Matrix g3 = Matrix::diag({-16.0 + 16.64468576727409, -4.0 + 4.552474610531074});
  const Inertia i3 = inertia_of(g3);
  CHECK(i3.n_pos == 2);
  CHECK(i3.n_zero == 0);
  CHECK(i3.n_neg == 0);
}

TEST_CASE("congruence_diagonalize fixed case") {
  const Matrix g = -1.0 * Matrix::identity(2);
  const Matrix s = Matrix::diag({2.0, 0.0});
  const CongruencePair cp = congruence_diagonalize(g, s);
  CHECK(close_vec(cp.lambdas, {1.0, 1.0}, 1e-14));
  CHECK(cp.a_values[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::fabs(cp.a_values[1]) <= 1e-12);
}

TEST_CASE("congruence_diagonalize residual invariants on random pairs") {
  Rng rng(505);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(1, 6);
    Matrix g = -1.0 * oracles::random_pd(rng, n);
    const Matrix s = oracles::random_psd(rng, n, rng.uniform_int(1, n));
    const CongruencePair cp = congruence_diagonalize(g, s);

    const Matrix tgt = transpose(cp.t) * g * cp.t;
    Matrix want_g(n, n);
    for (int i = 0; i < n; ++i) want_g(i, i) = -cp.lambdas[i];
    CHECK(max_abs(tgt - want_g) <= 1e-8 * (1.0 + spectral_norm_sym(g)));

    const Matrix tst = transpose(cp.t) * s * cp.t;
    CHECK(max_abs(tst - Matrix::diag(cp.a_values)) <= 1e-8 * (1.0 + spectral_norm_sym(s)));

    for (double lam : cp.lambdas) CHECK(lam > 0.0);
  }
  CHECK_THROWS_AS(congruence_diagonalize(Matrix::identity(2), Matrix::identity(2)), DomainError);
}

TEST_CASE("PD ordering inversion: G >= U implies U^-1 >= G^-1") {
  Rng rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(1, 6);
    const Matrix u = oracles::random_pd(rng, n);
    const Matrix g = u + oracles::random_psd(rng, n, rng.uniform_int(1, n));
    const Matrix diff = pinv(u) - pinv(g);
    const Inertia in = inertia_of(symmetrize(diff));
    CHECK(in.n_neg == 0);
  }
}

TEST_CASE("block matrix sign equivalence for P + D U D^t") {
  Rng rng(707);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(2, 5);
    const int m = rng.uniform_int(1, n - 1);
    const Matrix p = -1.0 * oracles::random_pd(rng, n);
    Matrix u(n, n);
    {
      const Matrix u11 = oracles::random_pd(rng, m);
      const Matrix u22 = oracles::random_pd(rng, n - m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) u(i, j) = u11(i, j);
      for (int i = 0; i < n - m; ++i)
        for (int j = 0; j < n - m; ++j) u(m + i, m + j) = u22(i, j);
    }
    Matrix d(n, n);
    {
      Matrix d11(m, m);
      double smin = 0.0;
      do {
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) d11(i, j) = rng.uniform(-1.5, 1.5);
        const Vec sv = svd(d11).singular_values();
        smin = sv.back();
      } while (smin < 1e-3);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) d(i, j) = d11(i, j);
    }

    const Matrix lhs = p + d * u * transpose(d);
    const Matrix rhs = -1.0 * (transpose(d) * pinv(p) * d) - pinv(u);
    const Inertia li = inertia_of(symmetrize(lhs));
    const Inertia ri = inertia_of(symmetrize(rhs));
    if (li.n_zero > 0 || ri.n_zero > 0) continue;  // semidefinite-boundary draw
    ++checked;
    CHECK(li.negative_semidefinite() == ri.negative_semidefinite());
  }
  CHECK(checked >= 80);
}

TEST_CASE("solve_linear") {
  Rng rng(808);
  const Matrix a = oracles::random_pd(rng, 5);
  const Vec x_true = oracles::random_vec(rng, 5);
  const Vec b = matvec(a, x_true);
  const Vec x = solve_linear(a, b);
  CHECK(close_vec(x, x_true, 1e-10));

  CHECK_THROWS_AS(solve_linear(Matrix(2, 2), {1.0, 1.0}), NumericError);
}
