#pragma once

// Modal analysis of the coupled string-beam system
//   u1_tt - u1_xx + A u1 + B u2 = 0,  u2_tt + u2_xxxx + C u1 + D u2 = 0
// on (0, pi) with zero beam initial data, and the boundary observation
// d/dx u1(0, t) on (0, T).

#include <cstdint>
#include <vector>

#include "expbasis/gdd.hpp"
#include "expbasis/gram.hpp"
#include "expbasis/numkit.hpp"
#include "expbasis/spectrum.hpp"
#include "json.hpp"

namespace expbasis {

struct CoupledParams {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
  int k_max = 25;

  /// Every mode k <= k_max must have distinct positive eigenvalues and all
  /// nu_k, omega_k must be pairwise distinct; otherwise InputError.
  void validate() const;
  nlohmann::json to_json() const;
};

struct ModeFrequencies {
  double nu = 0.0;     // wave branch
  double omega = 0.0;  // beam branch
  double wave_component[2] = {1.0, 0.0};  // unit eigenvector of nu^2
  double beam_component[2] = {0.0, 1.0};  // unit eigenvector of omega^2
};

/// Square roots of the eigenvalues of [[k^2 + A, B], [C, k^4 + D]]. nu takes
/// the eigenvalue whose eigenvector has the larger first component; ties go
/// to the eigenvalue nearer k^2 + A, then to the smaller one.
ModeFrequencies eigenfrequencies(const CoupledParams& p, int k);

/// u1 = sum_k [alpha_plus e^{i omega t} + alpha_minus e^{-i omega t}
///             + beta_plus e^{i nu t} + beta_minus e^{-i nu t}] sin kx.
struct ModalEntry {
  int k = 0;
  double nu = 0.0;
  double omega = 0.0;
  cplx alpha_plus;
  cplx alpha_minus;
  cplx beta_plus;
  cplx beta_minus;
};

struct ModalCoefficients {
  std::vector<ModalEntry> modes;
};

ModalEntry modal_solve(const CoupledParams& p, int k, double y0_k, double y1_k);

/// Modes 1..y0.size(); y0 and y1 hold the sine coefficients of the string data.
ModalCoefficients modal_solve_all(const CoupledParams& p, const std::vector<double>& y0,
                                  const std::vector<double>& y1);

/// Exact modal state (a, b, a', b') at time t.
struct ModalState {
  double a = 0.0, b = 0.0, da = 0.0, db = 0.0;
};
ModalState modal_trajectory(const CoupledParams& p, int k, double y0_k, double y1_k, double t);

/// (pi/2) sum_k (k^2 y0_k^2 + y1_k^2).
double energy(const std::vector<double>& y0, const std::vector<double>& y1);

/// u1(x, t) from the modal sum; real up to rounding for real data.
cplx displacement(const ModalCoefficients& mc, double x, double t);

/// d/dx u1(0, t) as an exponential polynomial with real frequencies.
ExpPolynomial observation_signal(const ModalCoefficients& mc);

/// ||d/dx u1(0, .)||^2 on (0, T) through the closed-form Gram entries.
double observation_norm(const ModalCoefficients& mc, double T);

struct ObservabilityResult {
  double c_min = 0.0;
  std::vector<double> ratios;  // observation_norm / E0 per trial
};

/// Random string data y0_k, y1_k ~ N(0, 1) k^{-2}; trial i draws from the
/// seed sequence {seed, i}.
ObservabilityResult observability_ratio(const CoupledParams& p, double T, int trials, std::uint64_t seed);

/// Exact infimum of observation_norm / E0 over real string data on modes
/// 1..k_max (smallest generalized eigenvalue).
double observability_constant(const CoupledParams& p, double T);

/// Real spectrum {+-nu_k, +-omega_k}, k = 1..k_max.
Spectrum coupled_spectrum(const CoupledParams& p);

/// (alpha + beta) e^{i lambda t} - beta (lambda - mu) [lambda, mu], which
/// equals alpha e^{i lambda t} + beta e^{i mu t}.
ExpPolynomial two_point_dd_form(cplx alpha, cplx lambda, cplx beta, cplx mu);

/// (|alpha_+|^2 + |alpha_-|^2) / (|beta_+|^2 + |beta_-|^2) for one mode.
double kl_ratio(const ModalEntry& e);

}  // namespace expbasis
