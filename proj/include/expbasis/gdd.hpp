#pragma once

// Generalized divided differences of mu -> exp(i mu t).
//
// A GDD over nodes mu_1..mu_n is an exponential polynomial
//   sum_k sum_m c_{k,m} t^m exp(i nu_k t)
// where nu_k are the distinct nodes and m < multiplicity(nu_k). Three
// independent constructions are provided: residue (Hermite) form, the
// recursive difference quotient, and quadrature of the simplex integral.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "expbasis/numkit.hpp"

namespace expbasis {

/// Nodes closer than this are merged into one multiple node.
inline constexpr double kConfluenceTol = 1e-9;

/// One frequency of an exponential polynomial: coeffs[m] multiplies t^m.
struct ExpTerm {
  cplx freq;
  std::vector<cplx> coeffs;
};

/// Frequencies are kept sorted by (Re, Im) and pairwise distinct; terms with
/// equal frequency are merged by exact equality.
class ExpPolynomial {
 public:
  ExpPolynomial() = default;

  static ExpPolynomial exponential(cplx freq, cplx coeff = 1.0);
  static ExpPolynomial monomial(cplx freq, int power, cplx coeff = 1.0);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Adds coeff * t^power * exp(i freq t).
  void add(cplx freq, int power, cplx coeff);

  cplx operator()(double t) const;

  ExpPolynomial& operator+=(const ExpPolynomial& other);
  ExpPolynomial& operator-=(const ExpPolynomial& other);
  ExpPolynomial& operator*=(cplx s);

  friend ExpPolynomial operator+(ExpPolynomial a, const ExpPolynomial& b) { return a += b; }
  friend ExpPolynomial operator-(ExpPolynomial a, const ExpPolynomial& b) { return a -= b; }
  friend ExpPolynomial operator*(ExpPolynomial a, cplx s) { return a *= s; }
  friend ExpPolynomial operator*(cplx s, ExpPolynomial a) { return a *= s; }

  /// Sum of coefficient-vector lengths.
  std::size_t size() const;
  double max_abs_coefficient() const;

  friend bool operator==(const ExpPolynomial& a, const ExpPolynomial& b);

 private:
  std::vector<ExpTerm>::iterator find_or_insert(cplx freq);
  std::vector<ExpTerm> terms_;
};

/// Direct summation of sum_k sum_m c_{k,m} t^m exp(i nu_k t).
cplx eval(const ExpPolynomial& ep, double t);

/// Replaces every frequency nu by nu + shift; equals exp(i shift t) * ep.
ExpPolynomial translate(const ExpPolynomial& ep, cplx shift);

/// max |a - b| over coefficients, with frequencies matched exactly.
double coefficient_distance(const ExpPolynomial& a, const ExpPolynomial& b);

struct NodeGroup {
  cplx value;
  int multiplicity = 1;
};

/// Nodes merged at the confluence tolerance and sorted by (Re, Im).
struct CanonicalNodes {
  std::vector<NodeGroup> groups;
  std::vector<std::string> warnings;  // near-confluent pairs
  int count() const;
};

CanonicalNodes canonicalize(std::span<const cplx> nodes, double tol = kConfluenceTol);

struct GddResult {
  ExpPolynomial poly;
  std::vector<std::string> warnings;
};

/// Residue form: sum over distinct nodes of Res exp(izt)/prod(z - mu_j).
GddResult gdd_residue(std::span<const cplx> nodes);

/// Recursive difference quotient with extreme-pair endpoint selection.
GddResult gdd_recursive(std::span<const cplx> nodes);

/// Quadrature of the simplex-integral representation at time t, with the
/// nodes taken in the given order.
QuadResult gdd_integral_eval(std::span<const cplx> nodes, double t, double tol = 1e-7);

/// [mu_1], [mu_1, mu_2], ..., [mu_1..mu_n] via the residue form.
std::vector<ExpPolynomial> gdd_family(std::span<const cplx> nodes);

/// |GDD(t)| <= t^{n-1} exp(gamma t) / (n-1)!, gamma = -min Im mu_j.
struct EnvelopeBound {
  double gamma = 0.0;
  int order = 1;  // number of nodes
  double operator()(double t) const;
};

EnvelopeBound envelope_bound(std::span<const cplx> nodes);

}  // namespace expbasis
