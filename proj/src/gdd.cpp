#include "expbasis/gdd.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace expbasis {

namespace {

bool freq_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void check_nodes(std::span<const cplx> nodes) {
  if (nodes.empty() || nodes.size() > 32) throw InputError("GDD needs 1..32 nodes");
  for (const auto& z : nodes)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InputError("GDD node is not finite");
}

}  // namespace

ExpPolynomial ExpPolynomial::exponential(cplx freq, cplx coeff) { return monomial(freq, 0, coeff); }

ExpPolynomial ExpPolynomial::monomial(cplx freq, int power, cplx coeff) {
  ExpPolynomial ep;
  ep.add(freq, power, coeff);
  return ep;
}

std::vector<ExpTerm>::iterator ExpPolynomial::find_or_insert(cplx freq) {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), freq,
                             [](const ExpTerm& term, cplx f) { return freq_less(term.freq, f); });
  if (it != terms_.end() && it->freq == freq) return it;
  return terms_.insert(it, ExpTerm{freq, {}});
}

void ExpPolynomial::add(cplx freq, int power, cplx coeff) {
  if (power < 0) throw InputError("ExpPolynomial: negative power");
  auto it = find_or_insert(freq);
  if (it->coeffs.size() <= static_cast<std::size_t>(power)) it->coeffs.resize(power + 1);
  it->coeffs[power] += coeff;
}

cplx ExpPolynomial::operator()(double t) const { return eval(*this, t); }

ExpPolynomial& ExpPolynomial::operator+=(const ExpPolynomial& other) {
  for (const auto& term : other.terms_) {
    auto it = find_or_insert(term.freq);
    if (it->coeffs.size() < term.coeffs.size()) it->coeffs.resize(term.coeffs.size());
    for (std::size_t m = 0; m < term.coeffs.size(); ++m) it->coeffs[m] += term.coeffs[m];
  }
  return *this;
}

ExpPolynomial& ExpPolynomial::operator-=(const ExpPolynomial& other) {
  for (const auto& term : other.terms_) {
    auto it = find_or_insert(term.freq);
    if (it->coeffs.size() < term.coeffs.size()) it->coeffs.resize(term.coeffs.size());
    for (std::size_t m = 0; m < term.coeffs.size(); ++m) it->coeffs[m] -= term.coeffs[m];
  }
  return *this;
}

ExpPolynomial& ExpPolynomial::operator*=(cplx s) {
  for (auto& term : terms_)
    for (auto& c : term.coeffs) c *= s;
  return *this;
}

std::size_t ExpPolynomial::size() const {
  std::size_t n = 0;
  for (const auto& term : terms_) n += term.coeffs.size();
  return n;
}

double ExpPolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& term : terms_)
    for (const auto& c : term.coeffs) m = std::max(m, std::abs(c));
  return m;
}

bool operator==(const ExpPolynomial& a, const ExpPolynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k].freq != b.terms_[k].freq) return false;
    if (a.terms_[k].coeffs != b.terms_[k].coeffs) return false;
  }
  return true;
}

cplx eval(const ExpPolynomial& ep, double t) {
  cplx total = 0.0;
  for (const auto& term : ep.terms()) {
    cplx poly = 0.0;
    for (auto it = term.coeffs.rbegin(); it != term.coeffs.rend(); ++it) poly = poly * t + *it;
    total += poly * std::exp(kI * term.freq * t);
  }
  return total;
}

ExpPolynomial translate(const ExpPolynomial& ep, cplx shift) {
  ExpPolynomial out;
  for (const auto& term : ep.terms())
    for (std::size_t m = 0; m < term.coeffs.size(); ++m)
      out.add(term.freq + shift, static_cast<int>(m), term.coeffs[m]);
  return out;
}

double coefficient_distance(const ExpPolynomial& a, const ExpPolynomial& b) {
  return (a - b).max_abs_coefficient();
}

int CanonicalNodes::count() const {
  int n = 0;
  for (const auto& g : groups) n += g.multiplicity;
  return n;
}

CanonicalNodes canonicalize(std::span<const cplx> nodes, double tol) {
  check_nodes(nodes);
  std::vector<cplx> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end(), freq_less);
  const std::size_t n = sorted.size();

  // Connected components of the "closer than tol" graph.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  CanonicalNodes out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(sorted[i] - sorted[j]);
      if (d < tol) {
        parent[find(j)] = find(i);
      } else if (d <= 10.0 * tol) {
        std::ostringstream msg;
        msg << "near-confluent nodes " << sorted[i] << " and " << sorted[j] << " (distance " << d
            << "): GDD coefficients are ill-conditioned";
        out.warnings.push_back(msg.str());
      }
    }
  std::map<std::size_t, std::vector<cplx>> members;
  for (std::size_t i = 0; i < n; ++i) members[find(i)].push_back(sorted[i]);
  for (const auto& [root, vals] : members) {
    cplx sum = 0.0;
    for (const auto& v : vals) sum += v;
    out.groups.push_back({sum / static_cast<double>(vals.size()), static_cast<int>(vals.size())});
  }
  std::sort(out.groups.begin(), out.groups.end(),
            [](const NodeGroup& a, const NodeGroup& b) { return freq_less(a.value, b.value); });
  return out;
}

GddResult gdd_residue(std::span<const cplx> nodes) {
  CanonicalNodes canon = canonicalize(nodes);
  const auto& groups = canon.groups;
  GddResult out;
  out.warnings = std::move(canon.warnings);

  for (std::size_t k = 0; k < groups.size(); ++k) {
    const int mk = groups[k].multiplicity;
    // Taylor coefficients at nu_k of g_k(z) = prod_{j != k} (z - nu_j)^{-m_j}.
    std::vector<cplx> g(mk, 0.0);
    g[0] = 1.0;
    for (std::size_t j = 0; j < groups.size(); ++j) {
      if (j == k) continue;
      const cplx d = groups[k].value - groups[j].value;
      const int mj = groups[j].multiplicity;
      // (d + w)^{-m} = d^{-m} sum_s binom(m+s-1, s) (-w/d)^s
      std::vector<cplx> factor(mk);
      factor[0] = std::pow(d, -mj);
      for (int s = 1; s < mk; ++s) factor[s] = factor[s - 1] * (-static_cast<double>(mj + s - 1) / s) / d;
      std::vector<cplx> product(mk, 0.0);
      for (int a = 0; a < mk; ++a)
        for (int b = 0; a + b < mk; ++b) product[a + b] += g[a] * factor[b];
      g = std::move(product);
    }
    // Residue of exp(izt) g_k(z) / (z - nu_k)^{m_k}: t^l coefficient is
    // i^l / l! * g^{(m_k - 1 - l)} / (m_k - 1 - l)!.
    cplx ipow = 1.0;
    double lfact = 1.0;
    for (int l = 0; l < mk; ++l) {
      if (l > 0) {
        ipow *= kI;
        lfact *= l;
      }
      out.poly.add(groups[k].value, l, ipow / lfact * g[mk - 1 - l]);
    }
  }
  return out;
}

namespace {

class Recursion {
 public:
  Recursion(const std::vector<NodeGroup>& groups, std::vector<std::string>& warnings)
      : groups_(groups), warnings_(warnings) {}

  ExpPolynomial solve(const std::vector<int>& mult) {
    if (auto it = memo_.find(mult); it != memo_.end()) return it->second;

    std::vector<std::size_t> present;
    int total = 0;
    for (std::size_t k = 0; k < mult.size(); ++k)
      if (mult[k] > 0) {
        present.push_back(k);
        total += mult[k];
      }

    ExpPolynomial result;
    if (present.size() == 1) {
      // (it)^{n-1} exp(i mu t) / (n-1)!
      cplx c = 1.0;
      for (int j = 1; j < total; ++j) c *= kI / static_cast<double>(j);
      result = ExpPolynomial::monomial(groups_[present[0]].value, total - 1, c);
    } else {
      // Endpoints: the most distant pair of distinct nodes.
      std::size_t a = present[0], b = present[1];
      double best = -1.0;
      for (std::size_t x = 0; x < present.size(); ++x)
        for (std::size_t y = x + 1; y < present.size(); ++y) {
          const double d = std::abs(groups_[present[x]].value - groups_[present[y]].value);
          if (d > best) {
            best = d;
            a = present[x];
            b = present[y];
          }
        }
      if (best < 1e-6) {
        std::ostringstream msg;
        msg << "recursive GDD: endpoint separation " << best << " < 1e-6, catastrophic cancellation likely";
        warnings_.push_back(msg.str());
      }
      std::vector<int> without_b = mult, without_a = mult;
      --without_b[b];
      --without_a[a];
      result = solve(without_b) - solve(without_a);
      result *= 1.0 / (groups_[a].value - groups_[b].value);
    }
    memo_.emplace(mult, result);
    return result;
  }

 private:
  const std::vector<NodeGroup>& groups_;
  std::vector<std::string>& warnings_;
  std::map<std::vector<int>, ExpPolynomial> memo_;
};

}  // namespace

GddResult gdd_recursive(std::span<const cplx> nodes) {
  CanonicalNodes canon = canonicalize(nodes);
  GddResult out;
  out.warnings = std::move(canon.warnings);
  std::vector<int> mult;
  for (const auto& g : canon.groups) mult.push_back(g.multiplicity);
  Recursion rec(canon.groups, out.warnings);
  out.poly = rec.solve(mult);
  return out;
}

QuadResult gdd_integral_eval(std::span<const cplx> nodes, double t, double tol) {
  check_nodes(nodes);
  const int n = static_cast<int>(nodes.size());
  if (n > 7) throw InputError("gdd_integral_eval: at most 7 nodes");
  if (!(t >= 0.0 && t <= 50.0)) throw InputError("gdd_integral_eval: t must lie in [0, 50]");

  std::vector<cplx> steps(n > 1 ? n - 1 : 0);
  for (int j = 0; j + 1 < n; ++j) steps[j] = nodes[j + 1] - nodes[j];
  const cplx lead = std::pow(kI * t, n - 1) * std::exp(kI * t * nodes[0]);
  const cplx it = kI * t;
  auto integrand = [&](std::span<const double> tau) {
    cplx arg = 0.0;
    for (std::size_t j = 0; j < tau.size(); ++j) arg += tau[j] * steps[j];
    return lead * std::exp(it * arg);
  };
  return simplex_quad(integrand, n, tol);
}

std::vector<ExpPolynomial> gdd_family(std::span<const cplx> nodes) {
  check_nodes(nodes);
  std::vector<ExpPolynomial> family;
  family.reserve(nodes.size());
  for (std::size_t j = 1; j <= nodes.size(); ++j) family.push_back(gdd_residue(nodes.first(j)).poly);
  return family;
}

double EnvelopeBound::operator()(double t) const {
  double factorial = 1.0;
  for (int j = 2; j < order; ++j) factorial *= j;
  return std::pow(t, order - 1) * std::exp(gamma * t) / factorial;
}

EnvelopeBound envelope_bound(std::span<const cplx> nodes) {
  check_nodes(nodes);
  double min_im = nodes[0].imag();
  for (const auto& z : nodes) min_im = std::min(min_im, z.imag());
  return {-min_im, static_cast<int>(nodes.size())};
}

}  // namespace expbasis
