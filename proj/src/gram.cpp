#include "expbasis/gram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace expbasis {

namespace {

cplx expm1(cplx z) {
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

// J_n(z) = integral_0^1 u^n e^{zu} du.
cplx scaled_moment(int n, cplx z) {
  const double r = std::abs(z);
  if (r <= n + 1.0) {
    // J_n(z) = e^z sum_k (-z)^k / ((n+1)(n+2)...(n+k+1)); ratio |z|/(n+k+2) < 1.
    cplx term = 1.0 / (n + 1.0);
    cplx sum = term;
    for (int k = 1; k < 2000; ++k) {
      term *= -z / (n + k + 1.0);
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return std::exp(z) * sum;
  }
  // Upward recursion J_k = (e^z - k J_{k-1}) / z, stable while k < |z|.
  const cplx ez = std::exp(z);
  cplx j = expm1(z) / z;
  for (int k = 1; k <= n; ++k) j = (ez - static_cast<double>(k) * j) / z;
  return j;
}

}  // namespace

Domain Domain::finite(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw InputError("finite domain requires T > 0");
  Domain d;
  d.kind = Kind::finite;
  d.T = T;
  return d;
}

std::string Domain::describe() const {
  if (is_halfline()) return "L2(0,inf)";
  std::ostringstream out;
  out.precision(17);
  out << "L2(0," << T << ")";
  return out.str();
}

cplx mono_exp_integral(int n, cplx sigma, double T) {
  if (n < 0) throw InputError("mono_exp_integral: negative power");
  return std::pow(T, n + 1) * scaled_moment(n, sigma * T);
}

cplx ip_mono_exp(int a, cplx mu, int b, cplx nu, const Domain& d) {
  if (a < 0 || b < 0) throw InputError("ip_mono_exp: negative power");
  const cplx sigma = kI * (mu - std::conj(nu));
  const int n = a + b;
  if (d.is_halfline()) {
    if (!(sigma.real() < 0.0)) {
      std::ostringstream msg;
      msg << "divergent half-line integral: Re(sigma) = " << sigma.real() << " >= 0 for frequencies " << mu
          << ", " << nu;
      throw DegeneracyError(msg.str());
    }
    // n! / (-sigma)^{n+1}, accumulated as a product to delay overflow.
    const cplx w = -sigma;
    cplx value = 1.0 / w;
    for (int k = 1; k <= n; ++k) value *= static_cast<double>(k) / w;
    return value;
  }
  return mono_exp_integral(n, sigma, d.T);
}

cplx inner(const ExpPolynomial& f, const ExpPolynomial& g, const Domain& d) {
  cplx total = 0.0;
  for (const auto& tf : f.terms())
    for (const auto& tg : g.terms())
      for (std::size_t a = 0; a < tf.coeffs.size(); ++a) {
        if (tf.coeffs[a] == cplx{}) continue;
        for (std::size_t b = 0; b < tg.coeffs.size(); ++b) {
          if (tg.coeffs[b] == cplx{}) continue;
          total += tf.coeffs[a] * std::conj(tg.coeffs[b]) *
                   ip_mono_exp(static_cast<int>(a), tf.freq, static_cast<int>(b), tg.freq, d);
        }
      }
  return total;
}

double norm_sq(const ExpPolynomial& f, const Domain& d) { return inner(f, f, d).real(); }

GramMatrix gram_functions(const std::vector<ExpPolynomial>& fs, const Domain& d, std::vector<std::string> labels) {
  const std::size_t n = fs.size();
  if (n == 0) throw InputError("Gram matrix of an empty family");
  if (labels.empty())
    for (std::size_t j = 0; j < n; ++j) labels.push_back("f" + std::to_string(j));
  if (labels.size() != n) throw InputError("Gram labels do not match the family size");
  CMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) {
      const cplx v = inner(fs[k], fs[j], d);
      m(j, k) = v;
      m(k, j) = std::conj(v);
    }
  return GramMatrix{HermitianMatrix(std::move(m)), d, std::move(labels)};
}

std::vector<ExpPolynomial> exponentials(const std::vector<cplx>& points) {
  std::vector<ExpPolynomial> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(ExpPolynomial::exponential(p));
  return out;
}

std::vector<ExpPolynomial> normalized(const std::vector<ExpPolynomial>& fs, const Domain& d) {
  std::vector<ExpPolynomial> out;
  out.reserve(fs.size());
  for (const auto& f : fs) {
    const double nsq = norm_sq(f, d);
    if (!(nsq > 0.0)) throw InputError("cannot normalize a zero-norm function");
    out.push_back(f * cplx(1.0 / std::sqrt(nsq)));
  }
  return out;
}

std::vector<double> biorth_norms(const std::vector<cplx>& points) {
  for (const auto& p : points)
    if (!(p.imag() > 0.0)) throw InputError("biorth_norms: points must lie in the upper half-plane");
  std::vector<double> out(points.size(), 1.0);
  for (std::size_t j = 0; j < points.size(); ++j)
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (k == j) continue;
      const cplx gap = points[k] - points[j];
      if (std::abs(gap) < 1e-9) throw DegeneracyError("biorth_norms: coincident points");
      out[j] *= std::norm((points[k] - std::conj(points[j])) / gap);
    }
  return out;
}

GramMatrix normalized_exponential_gram(const std::vector<cplx>& points) {
  std::vector<ExpPolynomial> fs;
  for (const auto& p : points) {
    if (!(p.imag() > 0.0)) throw InputError("normalized exponentials need Im > 0");
    fs.push_back(ExpPolynomial::exponential(p, std::sqrt(2.0 * p.imag())));
  }
  return gram_functions(fs, Domain::halfline());
}

RieszBounds gram_bounds(const GramMatrix& g) {
  const auto eig = eig_hermitian(g.base);
  RieszBounds b{eig.values.front(), eig.values.back()};
  if (b.lower < -1e-10 * std::abs(b.upper)) {
    std::ostringstream msg;
    msg << "Gram matrix is indefinite: min eigenvalue " << b.lower << " vs max " << b.upper;
    throw DegeneracyError(msg.str());
  }
  return b;
}

RieszBounds riesz_bounds(const std::vector<std::vector<ExpPolynomial>>& families, const Domain& d) {
  std::vector<ExpPolynomial> flat;
  for (const auto& fam : families) flat.insert(flat.end(), fam.begin(), fam.end());
  if (flat.size() > 512) throw InputError("riesz_bounds: more than 512 functions");
  return gram_bounds(gram_functions(flat, d));
}

double min_gram_eig(const std::vector<cplx>& points, const Domain& d) {
  if (points.size() > 512) throw InputError("min_gram_eig: more than 512 points");
  return gram_bounds(gram_functions(exponentials(points), d)).lower;
}

double angle(const ExpPolynomial& f, const ExpPolynomial& g, const Domain& d) {
  const double nf = norm_sq(f, d);
  const double ng = norm_sq(g, d);
  if (!(nf > 0.0) || !(ng > 0.0)) throw InputError("angle: zero-norm function");
  const double c = std::min(1.0, std::abs(inner(f, g, d)) / std::sqrt(nf) / std::sqrt(ng));
  return std::acos(c);
}

std::string gram_csv(const GramMatrix& g) {
  std::string out;
  char buf[64];
  const std::size_t n = g.dim();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx v = g.base(j, k);
      std::snprintf(buf, sizeof buf, "%s%.17g,%.17g", k == 0 ? "" : ",", v.real(), v.imag());
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace expbasis
