#pragma once

// Generating functions as symmetric zero products, weights |F(x+ih)|^2 on
// horizontal lines, a dyadic Muckenhoupt A2 estimator, and the zero-set
// constructions used for the coupled string-beam example.

#include <string>
#include <vector>

#include "expbasis/numkit.hpp"
#include "expbasis/spectrum.hpp"
#include "json.hpp"

namespace expbasis {

/// Partial product over |lambda_k| <= R of (1 - z/lambda_k)^{m_k}; a zero at
/// the origin contributes the factor z^{m}.
cplx gen_func_eval(const Spectrum& zeros, cplx z, double R);

struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  int count = 16;

  /// "min:max:count"
  static GridSpec parse(const std::string& text);
  double x(int i) const { return x_min + (x_max - x_min) * i / (count - 1); }
  nlohmann::json to_json() const;
};

struct WeightSamples {
  double h = 0.0;
  GridSpec grid;
  std::vector<double> values;
  double R = 0.0;  // truncation radius used
};

/// |F(x + ih)|^2 on the grid. The line must keep a 0.1 margin from the
/// zeros' imaginary parts; a sample below 1e-14 * max raises DegeneracyError.
WeightSamples weight_on_line(const Spectrum& zeros, double h, const GridSpec& grid, double R);

/// Same, doubling R from `R_start` until no sample moves by more than 0.5%
/// (or the window already holds every zero).
WeightSamples weight_on_line_adaptive(const Spectrum& zeros, double h, const GridSpec& grid, double R_start);

std::string weight_csv(const WeightSamples& w);

/// Dyadic subintervals of the grid holding at least `min_points` samples.
struct IntervalFamily {
  int min_points = 2;
};

struct A2Estimate {
  double sup = 1.0;
  int lo = 0;  // grid index range of the maximizing interval
  int hi = 0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  int intervals = 0;
};

/// max over the family of (mean w) * (mean 1/w), trapezoid means.
A2Estimate a2_sup(const WeightSamples& w, const IntervalFamily& family = {});

/// Zeros {0} u {+-mu_n}, n = 1..K, with mu_n = 2n/delta except that each
/// omega_k replaces its nearest lattice point (ties rounded down, index >= 1).
Spectrum build_F2_zeros(const std::vector<double>& omega, double delta, int K);

/// sup_n (1/N) |Re(d_{n+1} + ... + d_{n+N})| over the sample.
double mean_offset_d(const std::vector<cplx>& offsets, int window);

}  // namespace expbasis
