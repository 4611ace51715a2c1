#include "doctest.h"

#include <cmath>
#include <random>

#include "expbasis/coupled.hpp"
#include "expbasis/genfun.hpp"

using namespace expbasis;

namespace {

Spectrum integer_zeros(int n_max, bool with_origin) {
  std::vector<SpectrumPoint> pts;
  if (with_origin) pts.push_back({0.0, 1});
  for (int n = 1; n <= n_max; ++n) {
    pts.push_back({double(n), 1});
    pts.push_back({-double(n), 1});
  }
  return Spectrum(std::move(pts), 0.0, 0.0);
}

WeightSamples constant_weight(double c, int count) {
  WeightSamples w;
  w.grid = GridSpec{-1.0, 1.0, count};
  w.values.assign(count, c);
  return w;
}

}  // namespace

TEST_CASE("gen_func_eval examples") {
  const Spectrum ints = integer_zeros(200, false);
  const cplx v = gen_func_eval(ints, 0.5, 200.0);
  CHECK(std::abs(v - 2.0 / kPi) <= 2e-3);
  CHECK(gen_func_eval(ints, 3.0, 200.0) == cplx(0.0));
  CHECK(gen_func_eval(ints, 0.0, 200.0) == cplx(1.0));
  CHECK(gen_func_eval(Spectrum(), cplx(3.0, 4.0), 10.0) == cplx(1.0));

  // Symmetric real zero set: real on the real axis.
  for (double x : {0.3, 7.25, 150.5}) {
    const cplx f = gen_func_eval(ints, x, 200.0);
    CHECK(std::abs(f.imag()) <= 1e-10 * std::max(std::abs(f), 1e-300));
  }
  // Only zeros with |lambda| <= R enter.
  CHECK(gen_func_eval(ints, 150.0, 100.0) != cplx(0.0));
}

TEST_CASE("grid spec parsing") {
  const auto g = GridSpec::parse("-100:100:4096");
  CHECK(g.x_min == -100.0);
  CHECK(g.x_max == 100.0);
  CHECK(g.count == 4096);
  CHECK(g.x(4095) == 100.0);
  CHECK_THROWS_AS(GridSpec::parse("1:0:100"), InputError);
  CHECK_THROWS_AS(GridSpec::parse("0:1:8"), InputError);
  CHECK_THROWS_AS(GridSpec::parse("0:1"), InputError);
  CHECK_THROWS_AS(GridSpec::parse("0:1:20x"), InputError);
}

TEST_CASE("weight_on_line examples") {
  const GridSpec grid{-5.0, 5.0, 101};
  const auto empty = weight_on_line(Spectrum(), 1.0, grid, 10.0);
  for (double v : empty.values) CHECK(v == 1.0);

  const Spectrum one = Spectrum::from_values({kI});
  const auto w = weight_on_line(one, 2.0, grid, 10.0);
  for (int i = 0; i < grid.count; ++i) {
    const cplx z(grid.x(i), 2.0);
    CHECK(w.values[i] == doctest::Approx(std::norm(1.0 - z / kI)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(weight_on_line(one, 1.05, grid, 10.0), InputError);
  CHECK_THROWS_AS(weight_on_line(one, 2.0, GridSpec{0.0, 1.0, 8}, 10.0), InputError);

  // Integer zeros at h = 1: |sin(pi z)/(pi z)|^2 up to truncation.
  const Spectrum ints = integer_zeros(2000, false);
  const auto wi = weight_on_line(ints, 1.0, GridSpec{-3.0, 3.0, 61}, 2000.0);
  for (int i = 0; i < 61; ++i) {
    const cplx z(wi.grid.x(i), 1.0);
    const double exact = std::norm(std::sin(kPi * z) / (kPi * z));
    CHECK(wi.values[i] == doctest::Approx(exact).epsilon(5e-3));
  }
  // max/min over one period is stable under refinement.
  auto ratio = [&](int count) {
    const auto s = weight_on_line(ints, 1.0, GridSpec{10.0, 11.0, count}, 2000.0);
    const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
    return *hi / *lo;
  };
  CHECK(ratio(64) / ratio(128) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("adaptive truncation and CSV") {
  const Spectrum ints = integer_zeros(500, false);
  const GridSpec grid{-2.0, 2.0, 33};
  const auto w = weight_on_line_adaptive(ints, 1.0, grid, 8.0);
  CHECK(w.R > 8.0);
  const auto full = weight_on_line(ints, 1.0, grid, 1e9);
  for (int i = 0; i < grid.count; ++i) CHECK(w.values[i] == doctest::Approx(full.values[i]).epsilon(0.02));
  const std::string csv = weight_csv(w);
  CHECK(csv.rfind("x,w\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == grid.count + 1);
}

TEST_CASE("a2_sup examples and invariants") {
  CHECK(a2_sup(constant_weight(1.0, 64)).sup == 1.0);
  CHECK(a2_sup(constant_weight(7.5, 100)).sup == 1.0);

  WeightSamples e;
  e.grid = GridSpec{0.0, 1.0, 20001};
  for (int i = 0; i < e.grid.count; ++i) e.values.push_back(std::exp(e.grid.x(i)));
  const auto est = a2_sup(e);
  CHECK(est.sup == doctest::Approx((std::exp(1.0) - 1.0) * (1.0 - std::exp(-1.0))).epsilon(1e-8));
  CHECK(est.sup == doctest::Approx(1.0861).epsilon(1e-4));
  CHECK(est.x_lo == 0.0);
  CHECK(est.x_hi == 1.0);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  WeightSamples r;
  r.grid = GridSpec{0.0, 1.0, 257};
  for (int i = 0; i < 257; ++i) r.values.push_back(u(rng));
  const double s = a2_sup(r).sup;
  CHECK(s >= 1.0);
  for (auto& v : r.values) v *= 4.0;
  CHECK(a2_sup(r).sup == doctest::Approx(s).epsilon(1e-14));

  WeightSamples bad = constant_weight(1.0, 16);
  bad.values[3] = 0.0;
  CHECK_THROWS_AS(a2_sup(bad), InputError);
}

TEST_CASE("A2 of the integer-zero weight is stable under grid doubling") {
  const Spectrum ints = integer_zeros(2000, false);
  const auto a = a2_sup(weight_on_line(ints, 1.0, GridSpec{-100.0, 100.0, 2048}, 2000.0)).sup;
  const auto b = a2_sup(weight_on_line(ints, 1.0, GridSpec{-100.0, 100.0, 4096}, 2000.0)).sup;
  CHECK(a > 1.0);
  CHECK(std::abs(a - b) / b <= 0.05);
}

TEST_CASE("build_F2_zeros") {
  std::vector<double> omega;
  for (int k = 1; k <= 6; ++k) omega.push_back(double(k) * k);
  const Spectrum s = build_F2_zeros(omega, 1.0, 10);
  CHECK(s.count() == 21);
  auto has = [&](double v) {
    for (const auto& p : s.points())
      if (p.value == cplx(v)) return true;
    return false;
  };
  CHECK(has(0.0));
  CHECK(has(1.0));   // k = 1: index 0.5 rounds down, clamped to 1
  CHECK(has(4.0));   // exact hit on mu_2
  CHECK(has(9.0));   // 4.5 rounds down to index 4
  CHECK(has(16.0));  // index 8
  CHECK(!has(8.0));
  CHECK(has(-9.0));
  CHECK(has(20.0));  // untouched lattice point
  CHECK(!has(25.0)); // index 12.5 is beyond K

  const Spectrum plain = build_F2_zeros({}, 0.5, 5);
  CHECK(plain.count() == 11);
  CHECK(plain.points().back().value == cplx(20.0));

  CHECK_THROWS_AS(build_F2_zeros({4.0, 4.2}, 1.0, 10), InputError);
  CHECK_THROWS_AS(build_F2_zeros({4.0, 3.0}, 1.0, 10), InputError);
  CHECK_THROWS_AS(build_F2_zeros({}, 0.0, 10), InputError);
}

TEST_CASE("F2 grows along the imaginary axis at rate pi delta / 2") {
  // sin(pi delta z / 2) has exponential type pi delta / 2.
  for (double delta : {0.5, 0.2}) {
    const int K = 4000;
    const Spectrum s = build_F2_zeros({}, delta, K);
    std::vector<double> ys, logs;
    for (double y = 40.0; y <= 200.0; y += 10.0) {
      ys.push_back(y);
      logs.push_back(std::log(std::abs(gen_func_eval(s, cplx(0.0, y), 1e12))));
    }
    double my = 0.0, ml = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      my += ys[i] / ys.size();
      ml += logs[i] / ys.size();
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      sxy += (ys[i] - my) * (logs[i] - ml);
      sxx += (ys[i] - my) * (ys[i] - my);
    }
    CHECK(sxy / sxx == doctest::Approx(kPi * delta / 2.0).epsilon(0.1));
  }
}

TEST_CASE("mean offset statistic") {
  CHECK(mean_offset_d(std::vector<cplx>(50, 0.3), 7) == doctest::Approx(0.3));
  std::vector<cplx> alt;
  for (int n = 1; n <= 100; ++n) alt.push_back(n % 2 ? -1.0 : 1.0);
  for (int N : {1, 2, 5, 10, 41}) CHECK(mean_offset_d(alt, N) <= 1.0 / N + 1e-15);

  std::vector<cplx> asym;
  for (int n = 1; n <= 5000; ++n) asym.push_back(1.0 / (2.0 * n));
  double prev = 1e9;
  for (int N : {10, 100, 1000}) {
    const double d = mean_offset_d(asym, N);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 0.01);
  CHECK_THROWS_AS(mean_offset_d(asym, 0), InputError);
}

TEST_CASE("F1 for the decoupled string equals sin(pi z)/pi") {
  // Mode 1 has nu = omega = 1 when everything vanishes, so it is rejected by
  // the eigensolver; nu_1 = 1 is entered directly.
  CoupledParams p;
  std::vector<SpectrumPoint> pts{{0.0, 1}, {1.0, 1}, {-1.0, 1}};
  const int K = 400000;
  CHECK_THROWS_AS(eigenfrequencies(p, 1), InputError);
  for (int k = 2; k <= K; ++k) {
    const double nu = eigenfrequencies(p, k).nu;
    pts.push_back({nu, 1});
    pts.push_back({-nu, 1});
  }
  const Spectrum zeros(std::move(pts), 0.0, 0.0);
  for (double x = -1.0; x <= 1.0; x += 0.125) {
    const double expect = std::sin(kPi * x) / kPi;
    CHECK(std::abs(gen_func_eval(zeros, x, 1e12) - expect) <= 1e-6);
  }
}
