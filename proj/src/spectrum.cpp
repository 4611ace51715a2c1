#include "expbasis/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace expbasis {

namespace {

bool point_less(const SpectrumPoint& a, const SpectrumPoint& b) {
  if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
  return a.value.imag() < b.value.imag();
}

}  // namespace

Spectrum::Spectrum(std::vector<SpectrumPoint> points, double alpha, double beta)
    : points_(std::move(points)), alpha_(alpha), beta_(beta) {
  if (!(alpha <= beta)) throw InputError("spectrum strip requires alpha <= beta");
  for (const auto& p : points_) {
    if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag()))
      throw InputError("spectrum point is not finite");
    if (p.multiplicity < 1) throw InputError("spectrum multiplicity must be >= 1");
    if (p.value.imag() < alpha || p.value.imag() > beta) {
      std::ostringstream msg;
      msg << "spectrum point " << p.value << " lies outside the strip [" << alpha << ", " << beta << "]";
      throw InputError(msg.str());
    }
  }
  std::stable_sort(points_.begin(), points_.end(), point_less);
}

Spectrum Spectrum::fitted(std::vector<SpectrumPoint> points) {
  double lo = 0.0, hi = 0.0;
  if (!points.empty()) {
    lo = hi = points.front().value.imag();
    for (const auto& p : points) {
      lo = std::min(lo, p.value.imag());
      hi = std::max(hi, p.value.imag());
    }
  }
  return Spectrum(std::move(points), lo, hi);
}

Spectrum Spectrum::from_values(const std::vector<cplx>& values) {
  std::vector<SpectrumPoint> points;
  points.reserve(values.size());
  for (const auto& v : values) points.push_back({v, 1});
  return fitted(std::move(points));
}

Spectrum Spectrum::from_json(const nlohmann::json& j) {
  try {
    const double alpha = j.at("alpha").get<double>();
    const double beta = j.at("beta").get<double>();
    std::vector<SpectrumPoint> points;
    for (const auto& p : j.at("points")) {
      SpectrumPoint sp;
      sp.value = {p.at("re").get<double>(), p.at("im").get<double>()};
      sp.multiplicity = p.value("mult", 1);
      points.push_back(sp);
    }
    return Spectrum(std::move(points), alpha, beta);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed spectrum JSON: ") + e.what());
  }
}

Spectrum Spectrum::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spectrum file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("cannot parse " + path + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json Spectrum::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points_)
    pts.push_back({{"re", p.value.real()}, {"im", p.value.imag()}, {"mult", p.multiplicity}});
  return {{"alpha", alpha_}, {"beta", beta_}, {"points", pts}};
}

int Spectrum::count() const {
  int n = 0;
  for (const auto& p : points_) n += p.multiplicity;
  return n;
}

std::vector<cplx> Spectrum::expanded() const {
  std::vector<cplx> out;
  out.reserve(count());
  for (const auto& p : points_)
    for (int m = 0; m < p.multiplicity; ++m) out.push_back(p.value);
  return out;
}

double separation(const Spectrum& spectrum) {
  if (spectrum.count() < 2) throw InputError("separation undefined for fewer than two points");
  const auto& pts = spectrum.points();
  for (const auto& p : pts)
    if (p.multiplicity > 1) return 0.0;
  // Points are sorted by Re: sweep with a Re-distance cutoff.
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[j].value.real() - pts[i].value.real() >= best) break;
      best = std::min(best, std::abs(pts[j].value - pts[i].value));
    }
  return best;
}

UnionCount min_union_count(const Spectrum& spectrum, double gap_floor) {
  std::vector<double> re;
  for (const auto& v : spectrum.expanded()) re.push_back(v.real());
  std::sort(re.begin(), re.end());
  const int len = static_cast<int>(re.size());
  UnionCount out;
  for (int n = 1; n < len; ++n) {
    double gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k + n < len; ++k) gap = std::min(gap, re[k + n] - re[k]);
    if (gap > gap_floor) {
      out.n = n;
      out.gap = gap;
      return out;
    }
  }
  out.n = std::max(len, 1);
  out.gap = std::numeric_limits<double>::infinity();
  out.pathological = true;
  return out;
}

double r0(double delta, int n) {
  if (!(delta > 0.0)) throw InputError("r0: separation delta must be positive");
  if (n < 1) throw InputError("r0: union count N must be >= 1");
  return delta / (2.0 * n);
}

std::vector<cplx> Group::nodes(const Spectrum& spectrum) const {
  std::vector<cplx> out;
  for (auto idx : members)
    for (int m = 0; m < spectrum.points()[idx].multiplicity; ++m) out.push_back(spectrum.points()[idx].value);
  return out;
}

int Group::count(const Spectrum& spectrum) const {
  int n = 0;
  for (auto idx : members) n += spectrum.points()[idx].multiplicity;
  return n;
}

double group_delta(const Group& group, const Spectrum& spectrum) {
  const auto& pts = spectrum.points();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < group.members.size(); ++a) {
    if (pts[group.members[a]].multiplicity > 1) return 0.0;
    for (std::size_t b = a + 1; b < group.members.size(); ++b)
      best = std::min(best, std::abs(pts[group.members[a]].value - pts[group.members[b]].value));
  }
  return best;
}

std::vector<Group> cluster(const Spectrum& spectrum, double r) {
  if (!(r > 0.0)) throw InputError("cluster radius must be positive");
  const auto& pts = spectrum.points();
  const std::size_t n = pts.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const double reach = 2.0 * r;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n && pts[j].value.real() - pts[i].value.real() < reach; ++j)
      if (std::abs(pts[j].value - pts[i].value) < reach) {
        const std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  std::vector<Group> groups;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(groups.size());
      groups.push_back(Group{{}, r});
    }
    groups[slot[root]].members.push_back(i);
  }
  for (auto& g : groups) g.delta = group_delta(g, spectrum);
  return groups;
}

}  // namespace expbasis
