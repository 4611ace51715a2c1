#include "expbasis/genfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace expbasis {

cplx gen_func_eval(const Spectrum& zeros, cplx z, double R) {
  cplx value = 1.0;
  for (const auto& p : zeros.points()) {
    if (std::abs(p.value) > R) continue;
    const cplx factor = p.value == cplx{} ? z : 1.0 - z / p.value;
    for (int m = 0; m < p.multiplicity; ++m) value *= factor;
  }
  return value;
}

GridSpec GridSpec::parse(const std::string& text) {
  GridSpec g;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.x_min, &g.x_max, &g.count, &tail) != 3)
    throw InputError("grid must be written min:max:count, got '" + text + "'");
  if (!(g.x_min < g.x_max)) throw InputError("grid requires min < max");
  if (g.count < 16) throw InputError("grid requires at least 16 points");
  return g;
}

nlohmann::json GridSpec::to_json() const { return {{"x_min", x_min}, {"x_max", x_max}, {"count", count}}; }

WeightSamples weight_on_line(const Spectrum& zeros, double h, const GridSpec& grid, double R) {
  if (grid.count < 16) throw InputError("weight grid requires at least 16 points");
  constexpr double kMargin = 0.1;
  if (zeros.size() > 0) {
    double lo = zeros.points().front().value.imag(), hi = lo;
    for (const auto& p : zeros.points()) {
      lo = std::min(lo, p.value.imag());
      hi = std::max(hi, p.value.imag());
    }
    if (h >= lo - kMargin && h <= hi + kMargin) {
      std::ostringstream msg;
      msg << "line Im z = " << h << " is within " << kMargin << " of the zero strip [" << lo << ", " << hi << "]";
      throw InputError(msg.str());
    }
  }
  WeightSamples w{h, grid, std::vector<double>(grid.count), R};
  double peak = 0.0;
  for (int i = 0; i < grid.count; ++i) {
    w.values[i] = std::norm(gen_func_eval(zeros, cplx(grid.x(i), h), R));
    peak = std::max(peak, w.values[i]);
  }
  for (int i = 0; i < grid.count; ++i)
    if (!(w.values[i] >= 1e-14 * peak) || !(w.values[i] > 0.0)) {
      std::ostringstream msg;
      msg << "degenerate weight: w(" << grid.x(i) << ") = " << w.values[i] << " against max " << peak;
      throw DegeneracyError(msg.str());
    }
  return w;
}

WeightSamples weight_on_line_adaptive(const Spectrum& zeros, double h, const GridSpec& grid, double R_start) {
  if (!(R_start > 0.0)) throw InputError("truncation radius must be positive");
  double reach = 0.0;
  for (const auto& p : zeros.points()) reach = std::max(reach, std::abs(p.value));
  double R = R_start;
  WeightSamples current = weight_on_line(zeros, h, grid, R);
  while (R < reach) {
    R *= 2.0;
    WeightSamples next = weight_on_line(zeros, h, grid, R);
    double change = 0.0;
    for (int i = 0; i < grid.count; ++i)
      change = std::max(change, std::abs(next.values[i] - current.values[i]) / current.values[i]);
    current = std::move(next);
    if (change < 0.005) break;
  }
  return current;
}

std::string weight_csv(const WeightSamples& w) {
  std::string out = "x,w\n";
  char buf[64];
  for (int i = 0; i < w.grid.count; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", w.grid.x(i), w.values[i]);
    out += buf;
  }
  return out;
}

A2Estimate a2_sup(const WeightSamples& w, const IntervalFamily& family) {
  const int n = static_cast<int>(w.values.size());
  if (n < 2) throw InputError("a2_sup needs at least two samples");
  const int min_points = std::max(2, family.min_points);
  for (double v : w.values)
    if (!(v > 0.0)) throw InputError("a2_sup requires a strictly positive weight");

  // Prefix trapezoid integrals of w and 1/w, with w taken relative to its
  // first sample so that a constant weight gives exactly 1.
  const double ref = w.values.front();
  std::vector<double> iw(n, 0.0), iinv(n, 0.0), ilen(n, 0.0);
  for (int i = 1; i < n; ++i) {
    const double dx = w.grid.x(i) - w.grid.x(i - 1);
    const double a = w.values[i] / ref, b = w.values[i - 1] / ref;
    iw[i] = iw[i - 1] + 0.5 * dx * (a + b);
    iinv[i] = iinv[i - 1] + 0.5 * dx * (1.0 / a + 1.0 / b);
    ilen[i] = ilen[i - 1] + 0.5 * dx * (1.0 + 1.0);
  }

  A2Estimate best;
  best.sup = 0.0;
  const long long span = n - 1;
  for (long long pieces = 1;; pieces *= 2) {
    bool any = false;
    for (long long l = 0; l < pieces; ++l) {
      const int lo = static_cast<int>(l * span / pieces);
      const int hi = static_cast<int>((l + 1) * span / pieces);
      if (hi - lo + 1 < min_points) continue;
      any = true;
      ++best.intervals;
      const double len = ilen[hi] - ilen[lo];
      const double value = (iw[hi] - iw[lo]) * (iinv[hi] - iinv[lo]) / (len * len);
      if (value > best.sup) {
        best.sup = value;
        best.lo = lo;
        best.hi = hi;
      }
    }
    if (!any || pieces > span) break;
  }
  best.x_lo = w.grid.x(best.lo);
  best.x_hi = w.grid.x(best.hi);
  return best;
}

Spectrum build_F2_zeros(const std::vector<double>& omega, double delta, int K) {
  if (!(delta > 0.0)) throw InputError("build_F2_zeros: delta must be positive");
  if (K < 1) throw InputError("build_F2_zeros: K must be >= 1");
  for (std::size_t k = 1; k < omega.size(); ++k)
    if (!(omega[k] > omega[k - 1])) throw InputError("build_F2_zeros: omega must be strictly increasing");

  std::vector<double> mu(K + 1);
  for (int n = 1; n <= K; ++n) mu[n] = 2.0 * n / delta;
  std::set<long long> claimed;
  for (double w : omega) {
    if (!(w > 0.0)) throw InputError("build_F2_zeros: omega must be positive");
    // Nearest lattice index, halves rounded down; the origin is never replaced.
    long long idx = static_cast<long long>(std::ceil(w * delta / 2.0 - 0.5));
    idx = std::max(idx, 1LL);
    if (idx > K) continue;
    if (!claimed.insert(idx).second) {
      std::ostringstream msg;
      msg << "build_F2_zeros: two frequencies claim lattice index " << idx;
      throw InputError(msg.str());
    }
    mu[idx] = w;
  }
  std::vector<SpectrumPoint> pts{{0.0, 1}};
  for (int n = 1; n <= K; ++n) {
    pts.push_back({mu[n], 1});
    pts.push_back({-mu[n], 1});
  }
  return Spectrum(std::move(pts), 0.0, 0.0);
}

double mean_offset_d(const std::vector<cplx>& offsets, int window) {
  const int len = static_cast<int>(offsets.size());
  if (window < 1 || window > len) throw InputError("mean_offset_d: window must be in 1..length");
  double sum = 0.0;
  for (int j = 0; j < window; ++j) sum += offsets[j].real();
  double best = std::abs(sum);
  for (int n = window; n < len; ++n) {
    sum += offsets[n].real() - offsets[n - window].real();
    best = std::max(best, std::abs(sum));
  }
  return best / window;
}

}  // namespace expbasis
