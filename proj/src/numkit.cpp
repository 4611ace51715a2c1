#include "expbasis/numkit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace expbasis {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product: inner dimensions differ");
  CMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference: shapes differ");
  CMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

HermitianMatrix::HermitianMatrix(CMatrix m) : m_(std::move(m)) {
  const std::size_t n = m_.rows();
  if (n == 0 || m_.cols() != n) throw InputError("Hermitian matrix must be square with dim >= 1");
  double scale = 0.0;
  for (const auto& v : m_.data()) scale = std::max(scale, std::abs(v));
  double worst = 0.0;
  std::size_t wr = 0, wc = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      const double defect = std::abs(m_(r, c) - std::conj(m_(c, r)));
      if (defect > worst) {
        worst = defect;
        wr = r;
        wc = c;
      }
    }
  if (worst > kSymmetryTol * std::max(scale, 1e-300)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: |M(" << wr << "," << wc << ") - conj(M(" << wc << "," << wr
        << "))| = " << worst << " exceeds " << kSymmetryTol << " * " << scale;
    throw InputError(msg.str());
  }
  for (std::size_t r = 0; r < n; ++r) {
    m_(r, r) = m_(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const cplx avg = 0.5 * (m_(r, c) + std::conj(m_(c, r)));
      m_(r, c) = avg;
      m_(c, r) = std::conj(avg);
    }
  }
}

EigenDecomposition eig_hermitian(const HermitianMatrix& herm) {
  const std::size_t n = herm.dim();
  if (n > 512) throw InputError("eig_hermitian: dimension exceeds 512");
  CMatrix a = herm.matrix();
  CMatrix v = CMatrix::identity(n);

  const double total = a.frobenius_norm();
  int sweep = 0;
  constexpr int kMaxSweeps = 100;
  for (; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= 1e-16 * total || total == 0.0) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq_abs = std::abs(a(p, q));
        if (apq_abs == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (apq_abs < 1e-300) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        // Phase that makes the pivot real, then a real symmetric rotation.
        const cplx phase = a(p, q) / apq_abs;  // e^{i phi}
        const double zeta = (aqq - app) / (2.0 * apq_abs);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx ems = s * std::conj(phase);  // s e^{-i phi}
        const cplx cem = c * std::conj(phase);  // c e^{-i phi}

        // A <- A U, with U_pp = c, U_pq = s, U_qp = -s e^{-i phi}, U_qq = c e^{-i phi}.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - ems * akq;
          a(k, q) = s * akp + cem * akq;
        }
        // A <- U* A.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk - std::conj(ems) * aqk;
          a(q, k) = s * apk + std::conj(cem) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - ems * vkq;
          v(k, q) = s * vkp + cem * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  out.sweeps = sweep;
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

namespace {

std::array<cplx, 2> unit(cplx x, cplx y) {
  const double norm = std::hypot(std::abs(x), std::abs(y));
  return {x / norm, y / norm};
}

// Null vector of [[a - lam, b], [c, d - lam]], or zero if the shifted matrix vanishes.
std::array<cplx, 2> null_vector(double a, double b, double c, double d, cplx lam) {
  const cplx r1x = b, r1y = lam - a;      // orthogonal to row 1
  const cplx r2x = lam - d, r2y = c;      // orthogonal to row 2
  const double n1 = std::hypot(std::abs(r1x), std::abs(r1y));
  const double n2 = std::hypot(std::abs(r2x), std::abs(r2y));
  if (n1 == 0.0 && n2 == 0.0) return {0.0, 0.0};
  return n1 >= n2 ? unit(r1x, r1y) : unit(r2x, r2y);
}

}  // namespace

Eigen2x2 eig_2x2_real(double a, double b, double c, double d) {
  Eigen2x2 out;
  const double mean = 0.5 * (a + d);
  const double half_diff = 0.5 * (a - d);
  const double disc = half_diff * half_diff + b * c;
  const double det = a * d - b * c;

  cplx l1, l2;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    // Larger-magnitude root first, then the other from the determinant.
    const double big = mean >= 0.0 ? mean + root : mean - root;
    const double small = big != 0.0 ? det / big : mean - (mean >= 0.0 ? root : -root);
    l1 = std::min(big, small);
    l2 = std::max(big, small);
  } else {
    const double root = std::sqrt(-disc);
    l1 = cplx(mean, -root);
    l2 = cplx(mean, root);
  }
  out.values[0] = l1;
  out.values[1] = l2;

  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d), 1e-300});
  const bool repeated = std::abs(l1 - l2) <= 1e-14 * scale;
  if (repeated && b == 0.0 && c == 0.0) {
    out.vectors[0][0] = 1.0;
    out.vectors[0][1] = 0.0;
    out.vectors[1][0] = 0.0;
    out.vectors[1][1] = 1.0;
    return out;
  }
  for (int k = 0; k < 2; ++k) {
    const auto v = null_vector(a, b, c, d, out.values[k]);
    out.vectors[k][0] = v[0];
    out.vectors[k][1] = v[1];
  }
  if (repeated) out.defective = true;
  return out;
}

const GaussRule& gauss_legendre01(int points) {
  constexpr int kMax = 64;
  if (points < 1 || points > kMax) throw InputError("gauss_legendre01: 1..64 points supported");
  static const std::vector<GaussRule> table = [] {
    std::vector<GaussRule> rules(kMax + 1);
    for (int m = 1; m <= kMax; ++m) {
      GaussRule& rule = rules[m];
      rule.nodes.resize(m);
      rule.weights.resize(m);
      for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
          double p0 = 1.0, p1 = x;
          for (int j = 2; j <= m; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
          }
          dp = m * (x * p1 - p0) / (x * x - 1.0);
          const double dx = p1 / dp;
          x -= dx;
          if (std::abs(dx) < 1e-16) break;
        }
        // Recompute derivative at the converged root.
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= m; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = m * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.nodes[m - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[i] = 0.5 * w;
        rule.weights[m - 1 - i] = 0.5 * w;
      }
    }
    return rules;
  }();
  return table[points];
}

namespace {

// Nested rule: level k integrates tau_k over [0, tau_{k-1}] (tau_0 := 1).
struct NestedGauss {
  const SimplexIntegrand& f;
  const GaussRule& rule;
  int dims;
  std::vector<double> tau;

  cplx level(int k, double upper) {
    if (k == dims) return f(tau);
    cplx sum = 0.0;
    const std::size_t m = rule.nodes.size();
    for (std::size_t i = 0; i < m; ++i) {
      tau[k] = upper * rule.nodes[i];
      sum += rule.weights[i] * level(k + 1, tau[k]);
    }
    return sum * upper;
  }
};

}  // namespace

QuadResult simplex_quad(const SimplexIntegrand& f, int n, double tol) {
  if (n < 1 || n > 7) throw InputError("simplex_quad: order n must be in 1..7");
  if (!(tol > 0.0)) throw InputError("simplex_quad: tolerance must be positive");
  const int dims = n - 1;
  QuadResult out;
  if (dims == 0) {
    out.value = f(std::span<const double>{});
    out.points_per_dim = 0;
    return out;
  }
  static constexpr int kLadder[] = {4, 6, 8, 12, 16, 24, 32};
  cplx previous{};
  bool have_previous = false;
  for (int m : kLadder) {
    NestedGauss q{f, gauss_legendre01(m), dims, std::vector<double>(dims)};
    const cplx value = q.level(0, 1.0);
    out.value = value;
    out.points_per_dim = m;
    if (have_previous) {
      out.error_estimate = std::abs(value - previous);
      if (out.error_estimate <= tol) {
        out.converged = true;
        return out;
      }
    }
    previous = value;
    have_previous = true;
  }
  out.converged = false;
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("loglog_slope: need matching samples, at least two");
  double sx = 0.0, sy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InputError("loglog_slope: data must be positive");
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - sx / n;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - sy / n);
  }
  if (!(sxx > 0.0)) throw InputError("loglog_slope: x values are all equal");
  return sxy / sxx;
}

}  // namespace expbasis
