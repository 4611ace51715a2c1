#pragma once

// Closed-form L2 inner products of exponential polynomials on (0, T) and
// (0, inf), Gram matrices of function families, and the Riesz-bound, angle and
// biorthogonal-norm quantities derived from them.

#include <string>
#include <vector>

#include "expbasis/gdd.hpp"
#include "expbasis/numkit.hpp"

namespace expbasis {

struct Domain {
  enum class Kind { finite, halfline };
  Kind kind = Kind::halfline;
  double T = 0.0;

  static Domain finite(double T);
  static Domain halfline() { return {}; }
  bool is_halfline() const { return kind == Kind::halfline; }
  std::string describe() const;
};

/// Integral of t^n exp(sigma t) over (0, T).
cplx mono_exp_integral(int n, cplx sigma, double T);

/// <t^a e^{i mu t}, t^b e^{i nu t}> = integral of t^{a+b} e^{i(mu - conj nu)t}.
/// Throws DegeneracyError on the half-line when Re(i(mu - conj nu)) >= 0.
cplx ip_mono_exp(int a, cplx mu, int b, cplx nu, const Domain& d);

/// <f, g> = integral of f conj(g).
cplx inner(const ExpPolynomial& f, const ExpPolynomial& g, const Domain& d);
double norm_sq(const ExpPolynomial& f, const Domain& d);

struct GramMatrix {
  HermitianMatrix base;
  Domain domain;
  std::vector<std::string> labels;

  std::size_t dim() const { return base.dim(); }
};

/// Entry (j, k) = <f_k, f_j>, so that ||sum a_j f_j||^2 = a* G a.
GramMatrix gram_functions(const std::vector<ExpPolynomial>& fs, const Domain& d,
                          std::vector<std::string> labels = {});

std::vector<ExpPolynomial> exponentials(const std::vector<cplx>& points);

/// Unit-norm copies of the functions (zero-norm input is rejected).
std::vector<ExpPolynomial> normalized(const std::vector<ExpPolynomial>& fs, const Domain& d);

/// ||e'_j||^2 = prod_{k != j} |(mu_k - conj mu_j) / (mu_k - mu_j)|^2 for the
/// biorthogonal family of the unit-norm half-line exponentials.
std::vector<double> biorth_norms(const std::vector<cplx>& points);

/// Half-line Gram of sqrt(2 Im mu_j) exp(i mu_j t).
GramMatrix normalized_exponential_gram(const std::vector<cplx>& points);

struct RieszBounds {
  double lower = 0.0;  // smallest Gram eigenvalue
  double upper = 0.0;  // largest Gram eigenvalue
  double condition() const { return upper / lower; }
};

/// Extreme eigenvalues of a Gram matrix; DegeneracyError if it is indefinite
/// beyond -1e-10 relative.
RieszBounds gram_bounds(const GramMatrix& g);

/// Frame constants of the flattened family on a finite section.
RieszBounds riesz_bounds(const std::vector<std::vector<ExpPolynomial>>& families, const Domain& d);

/// Smallest Gram eigenvalue of the raw exponentials exp(i lambda t).
double min_gram_eig(const std::vector<cplx>& points, const Domain& d);

/// arccos(|<f,g>| / (||f|| ||g||)) in [0, pi/2].
double angle(const ExpPolynomial& f, const ExpPolynomial& g, const Domain& d);

/// Row-major CSV, each cell written as "re,im".
std::string gram_csv(const GramMatrix& g);

}  // namespace expbasis
