#pragma once

// Numerical substrate: dense complex matrices, a cyclic Jacobi eigensolver for
// small Hermitian matrices, a 2x2 real eigensolver, and iterated Gauss
// quadrature over the ordered simplex.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace expbasis {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cplx kI{0.0, 1.0};

/// Bad user input: malformed data, violated preconditions. CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation hit a numerical degeneracy (indefinite Gram, coincident
/// frequencies, divergent integral). CLI exit code 1.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major dense complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cplx> data() const { return data_; }

  CMatrix adjoint() const;
  double frobenius_norm() const;

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Square matrix checked to be Hermitian on construction.
class HermitianMatrix {
 public:
  /// Relative tolerance on |M_jk - conj(M_kj)| against the largest entry.
  static constexpr double kSymmetryTol = 1e-12;

  /// Throws InputError naming the worst symmetry defect if `m` is not
  /// Hermitian within kSymmetryTol. The stored matrix is the exact
  /// Hermitian part (M + M*)/2.
  explicit HermitianMatrix(CMatrix m);

  std::size_t dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  CMatrix m_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column k belongs to values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations. Eigenvalues ascending, eigenvectors orthonormal.
EigenDecomposition eig_hermitian(const HermitianMatrix& m);

/// Eigenpair of a real 2x2 matrix. Eigenvalues may be complex.
struct Eigen2x2 {
  cplx values[2];   // values[0] has the smaller real part (then smaller imag)
  cplx vectors[2][2];  // vectors[k] = unit eigenvector for values[k]
  bool defective = false;  // repeated eigenvalue with a single eigenvector
};

Eigen2x2 eig_2x2_real(double a, double b, double c, double d);

/// Integrand on the ordered simplex 0 <= tau_{d} <= ... <= tau_1 <= 1, d = n - 1.
using SimplexIntegrand = std::function<cplx(std::span<const double>)>;

struct QuadResult {
  cplx value;
  double error_estimate = 0.0;
  bool converged = true;
  int points_per_dim = 0;
};

/// Iterated Gauss-Legendre quadrature over the (n-1)-dimensional ordered
/// simplex. The rule size climbs a fixed ladder up to 32 points per
/// dimension; the error estimate is the difference to the previous rung.
/// n == 1 evaluates the integrand once at the empty point.
QuadResult simplex_quad(const SimplexIntegrand& f, int n, double tol);

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre01(int points);

/// Least-squares slope of log y against log x. Requires positive data and at
/// least two distinct x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace expbasis
