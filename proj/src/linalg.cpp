#include "cdt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cdt {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diag(const Vec& d) {
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

static void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string("shape mismatch in ") + op);
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "operator+");
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "operator-");
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("shape mismatch in matrix product");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix c(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
  return c;
}

Vec matvec(const Matrix& a, const Vec& x) {
  if (a.cols() != static_cast<int>(x.size())) throw DimensionError("matvec dimension mismatch");
  Vec y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("dot dimension mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j)));
  return m;
}

Vec axpy(double s, const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw DimensionError("axpy dimension mismatch");
  Vec z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = s * x[i] + y[i];
  return z;
}

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  double dev = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j) dev = std::max(dev, std::fabs(m(i, j) - m(j, i)));
  return dev <= tol * (1.0 + max_abs(m));
}

Matrix symmetrize(const Matrix& m) {
  Matrix s(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
  return s;
}

EigenSym sym_eigen(const Matrix& m_in, double sym_tol) {
  if (m_in.rows() != m_in.cols()) throw DimensionError("sym_eigen: matrix not square");
  if (!is_symmetric(m_in, sym_tol)) throw DomainError("sym_eigen: matrix not symmetric");
  const int n = m_in.rows();
  Matrix a = symmetrize(m_in);
  Matrix q = Matrix::identity(n);

  // Frobenius norm for the convergence threshold.
  double fro2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fro2 += a(i, j) * a(i, j);
  const double stop = 1e-30 * (fro2 + 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off2 = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off2 += 2.0 * a(i, j) * a(i, j);
    if (off2 <= stop) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int qq = p + 1; qq < n; ++qq) {
        const double apq = a(p, qq);
        if (std::fabs(apq) < 1e-300) continue;
        const double theta = (a(qq, qq) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, qq);
          a(k, p) = c * akp - s * akq;
          a(k, qq) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(qq, k);
          a(p, k) = c * apk - s * aqk;
          a(qq, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double qkp = q(k, p), qkq = q(k, qq);
          q(k, p) = c * qkp - s * qkq;
          q(k, qq) = s * qkp + c * qkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  EigenSym r;
  r.values.resize(n);
  r.vectors = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    r.values[j] = a(order[j], order[j]);
    for (int i = 0; i < n; ++i) r.vectors(i, j) = q(i, order[j]);
  }
  return r;
}

double spectral_norm_sym(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  EigenSym e = sym_eigen(m, 1e-8);
  return std::max(std::fabs(e.values.front()), std::fabs(e.values.back()));
}

// One-sided Jacobi on the columns; assumes rows >= cols.
static Svd svd_tall(const Matrix& m) {
  const int rows = m.rows(), cols = m.cols();
  Matrix a = m;
  Matrix v = Matrix::identity(cols);

  auto col_dot = [&](int i, int j) {
    double s = 0.0;
    for (int k = 0; k < rows; ++k) s += a(k, i) * a(k, j);
    return s;
  };

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool changed = false;
    for (int i = 0; i < cols - 1; ++i) {
      for (int j = i + 1; j < cols; ++j) {
        const double alpha = col_dot(i, i);
        const double beta = col_dot(j, j);
        const double gamma = col_dot(i, j);
        if (std::fabs(gamma) <= 1e-28 * std::sqrt(alpha * beta) + 1e-300) continue;
        changed = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int k = 0; k < rows; ++k) {
          const double aki = a(k, i), akj = a(k, j);
          a(k, i) = c * aki - s * akj;
          a(k, j) = s * aki + c * akj;
        }
        for (int k = 0; k < cols; ++k) {
          const double vki = v(k, i), vkj = v(k, j);
          v(k, i) = c * vki - s * vkj;
          v(k, j) = s * vki + c * vkj;
        }
      }
    }
    if (!changed) break;
  }

  Vec s(cols);
  for (int j = 0; j < cols; ++j) {
    double nrm = 0.0;
    for (int k = 0; k < rows; ++k) nrm += a(k, j) * a(k, j);
    s[j] = std::sqrt(nrm);
  }

  std::vector<int> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return s[i] > s[j]; });

  const double smax = cols > 0 ? s[order[0]] : 0.0;
  const double rank_tol = smax * 1e-14;

  Svd out;
  out.u = Matrix(rows, rows);
  out.r = Matrix(rows, cols);
  out.e = Matrix(cols, cols);

  int rank = 0;
  for (int j = 0; j < cols; ++j) {
    const int src = order[j];
    const double sj = s[src];
    if (sj > rank_tol && sj > 0.0) {
      out.r(j, j) = sj;
      for (int k = 0; k < rows; ++k) out.u(k, j) = a(k, src) / sj;
      ++rank;
    }
    for (int k = 0; k < cols; ++k) out.e(j, k) = v(k, src);  // row j of E = V^t
  }

  // Complete U to a full orthonormal basis.
  int next = rank;
  for (int cand = 0; cand < rows && next < rows; ++cand) {
    Vec w(rows, 0.0);
    w[cand] = 1.0;
    for (int rep = 0; rep < 2; ++rep) {
      for (int j = 0; j < next; ++j) {
        double proj = 0.0;
        for (int k = 0; k < rows; ++k) proj += w[k] * out.u(k, j);
        for (int k = 0; k < rows; ++k) w[k] -= proj * out.u(k, j);
      }
    }
    const double nw = norm2(w);
    if (nw > 1e-8) {
      for (int k = 0; k < rows; ++k) out.u(k, next) = w[k] / nw;
      ++next;
    }
  }
  if (next < rows) throw NumericError("svd: failed to complete an orthonormal basis");
  return out;
}

Svd svd(const Matrix& m) {
  if (m.rows() >= m.cols()) return svd_tall(m);
  Svd t = svd_tall(transpose(m));
  Svd out;
  out.u = transpose(t.e);
  out.r = transpose(t.r);
  out.e = transpose(t.u);
  return out;
}

Vec Svd::singular_values() const {
  const int k = std::min(r.rows(), r.cols());
  Vec s(k);
  for (int i = 0; i < k; ++i) s[i] = r(i, i);
  return s;
}

Matrix pinv(const Matrix& m, double rel_cutoff) {
  if (m.empty()) return transpose(m);
  if (m.rows() == m.cols() && is_symmetric(m, 1e-8)) {
    EigenSym e = sym_eigen(m, 1e-8);
    double lmax = 0.0;
    for (double v : e.values) lmax = std::max(lmax, std::fabs(v));
    const double cut = rel_cutoff * lmax;
    const int n = m.rows();
    Matrix out(n, n);
    for (int k = 0; k < n; ++k) {
      if (std::fabs(e.values[k]) <= cut || e.values[k] == 0.0) continue;
      const double w = 1.0 / e.values[k];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) += w * e.vectors(i, k) * e.vectors(j, k);
    }
    return out;
  }
  Svd d = svd(m);
  const Vec s = d.singular_values();
  double smax = 0.0;
  for (double v : s) smax = std::max(smax, v);
  const double cut = rel_cutoff * smax;
  Matrix rp(m.cols(), m.rows());
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i] > cut && s[i] > 0.0) rp(static_cast<int>(i), static_cast<int>(i)) = 1.0 / s[i];
  return transpose(d.e) * rp * transpose(d.u);
}

double default_inertia_tol(const Matrix& m) { return 1e-9 * (1.0 + spectral_norm_sym(m)); }

Inertia inertia_of(const Matrix& m, double tol) {
  EigenSym e = sym_eigen(m, 1e-8);
  Inertia in;
  in.tol = tol;
  for (double v : e.values) {
    if (v > tol) ++in.n_pos;
    else if (v < -tol) ++in.n_neg;
    else ++in.n_zero;
  }
  return in;
}

Inertia inertia_of(const Matrix& m) { return inertia_of(m, default_inertia_tol(m)); }

Matrix cholesky_lower(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("cholesky: matrix not square");
  const int n = m.rows();
  Matrix l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= 0.0) throw NumericError("cholesky: matrix not positive definite");
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

// Solve L X = B for lower-triangular L (in place on a copy of B).
static Matrix forward_solve(const Matrix& l, Matrix b) {
  const int n = l.rows();
  for (int col = 0; col < b.cols(); ++col) {
    for (int i = 0; i < n; ++i) {
      double s = b(i, col);
      for (int k = 0; k < i; ++k) s -= l(i, k) * b(k, col);
      b(i, col) = s / l(i, i);
    }
  }
  return b;
}

// Solve L^t X = B for lower-triangular L.
static Matrix backward_solve_t(const Matrix& l, Matrix b) {
  const int n = l.rows();
  for (int col = 0; col < b.cols(); ++col) {
    for (int i = n - 1; i >= 0; --i) {
      double s = b(i, col);
      for (int k = i + 1; k < n; ++k) s -= l(k, i) * b(k, col);
      b(i, col) = s / l(i, i);
    }
  }
  return b;
}

CongruencePair congruence_diagonalize(const Matrix& g, const Matrix& s) {
  if (!is_symmetric(g, 1e-8)) throw DomainError("congruence_diagonalize: G not symmetric");
  if (!is_symmetric(s, 1e-8)) throw DomainError("congruence_diagonalize: S not symmetric");
  if (g.rows() != s.rows()) throw DimensionError("congruence_diagonalize: size mismatch");
  const Inertia gi = inertia_of(g);
  if (!gi.negative_definite()) throw DomainError("congruence_diagonalize: G not negative definite");

  const int n = g.rows();
  const Matrix l = cholesky_lower(-1.0 * g);
  // W = L^{-1} S L^{-t}
  Matrix w = forward_solve(l, s);
  w = transpose(forward_solve(l, transpose(w)));
  w = symmetrize(w);
  EigenSym ew = sym_eigen(w, 1e-8);

  // Descending eigenvalues so the positive block comes first.
  Matrix q(n, n);
  Vec avals(n);
  for (int j = 0; j < n; ++j) {
    const int src = n - 1 - j;
    avals[j] = std::max(ew.values[src], 0.0);
    for (int i = 0; i < n; ++i) q(i, j) = ew.vectors(i, src);
  }

  CongruencePair out;
  out.t = backward_solve_t(l, q);  // T = L^{-t} Q
  out.lambdas = Vec(n, 1.0);
  out.a_values = avals;
  return out;
}

Vec solve_linear(Matrix a, Vec b) {
  if (a.rows() != a.cols() || a.rows() != static_cast<int>(b.size()))
    throw DimensionError("solve_linear: dimension mismatch");
  const int n = a.rows();
  std::vector<int> piv(n);
  std::iota(piv.begin(), piv.end(), 0);
  for (int k = 0; k < n; ++k) {
    int best = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > std::fabs(a(best, k))) best = i;
    if (best != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(best, j));
      std::swap(b[k], b[best]);
    }
    const double pivot = a(k, k);
    if (std::fabs(pivot) < 1e-300) throw NumericError("solve_linear: singular matrix");
    for (int i = k + 1; i < n; ++i) {
      const double f = a(i, k) / pivot;
      if (f == 0.0) continue;
      a(i, k) = 0.0;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  Vec x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

}  // namespace cdt
