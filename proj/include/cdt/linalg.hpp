// Dense symmetric linear algebra for small problems: Jacobi eigensolver,
// one-sided Jacobi SVD, Moore-Penrose pseudo-inverse, inertia counts,
// Cholesky, and the congruence diagonalization used by the saddle-subspace
// construction. Everything is value-semantic and thread-safe.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdt {

using Vec = std::vector<double>;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

  static Matrix identity(int n);
  static Matrix diag(const Vec& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  const std::vector<double>& data() const { return a_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Matrix transpose(const Matrix& a);
Vec matvec(const Matrix& a, const Vec& x);

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
double norm_inf(const Vec& a);
double max_abs(const Matrix& a);
Vec axpy(double s, const Vec& x, const Vec& y);  // s*x + y

// max |M - M^t| entry <= tol * (1 + max |M|)
bool is_symmetric(const Matrix& m, double tol = 1e-10);
Matrix symmetrize(const Matrix& m);  // (M + M^t)/2

struct EigenSym {
  Vec values;      // ascending
  Matrix vectors;  // columns are orthonormal eigenvectors
};

// Cyclic Jacobi; throws DomainError if m is not symmetric within sym_tol.
EigenSym sym_eigen(const Matrix& m, double sym_tol = 1e-10);

// Largest |eigenvalue| of a symmetric matrix.
double spectral_norm_sym(const Matrix& m);

struct Svd {
  Matrix u;  // orthogonal, rows x rows
  Matrix r;  // rows x cols, rectangular diagonal, descending nonnegative
  Matrix e;  // orthogonal, cols x cols;  m = u * r * e
  Vec singular_values() const;
};

Svd svd(const Matrix& m);

// Moore-Penrose pseudo-inverse; singular values below rel_cutoff * s_max are
// treated as zero. Symmetric input takes the eigendecomposition path.
Matrix pinv(const Matrix& m, double rel_cutoff = 1e-12);

struct Inertia {
  int n_pos = 0;
  int n_zero = 0;
  int n_neg = 0;
  double tol = 0.0;  // zero-band actually used

  bool positive_definite() const { return n_zero == 0 && n_neg == 0; }
  bool negative_definite() const { return n_zero == 0 && n_pos == 0; }
  bool positive_semidefinite() const { return n_neg == 0; }
  bool negative_semidefinite() const { return n_pos == 0; }
  bool indefinite() const { return n_pos > 0 && n_neg > 0; }
};

double default_inertia_tol(const Matrix& m);  // 1e-9 * (1 + ||M||_2)
Inertia inertia_of(const Matrix& m, double tol);
Inertia inertia_of(const Matrix& m);  // default zero band

// Lower-triangular L with M = L L^t; throws NumericError if not PD.
Matrix cholesky_lower(const Matrix& m);

struct CongruencePair {
  Matrix t;     // nonsingular
  Vec lambdas;  // positive; T^t G T = Diag(-lambda)
  Vec a_values; // positive, descending; T^t S T = Diag(a_1..a_r, 0..0)
};

// Simultaneous congruence for G negative definite and S PSD:
//   -G = L L^t,  L^{-1} S L^{-t} = Q Lambda Q^t (descending),  T = L^{-t} Q.
// Then T^t G T = -I and T^t S T = Lambda.
CongruencePair congruence_diagonalize(const Matrix& g, const Matrix& s);

// Gaussian elimination with partial pivoting; throws NumericError if the
// pivot collapses.
Vec solve_linear(Matrix a, Vec b);

}  // namespace cdt
