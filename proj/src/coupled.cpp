#include "expbasis/coupled.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace expbasis {

namespace {

struct Branches {
  ModeFrequencies freq;
  double nu_sq = 0.0;
  double omega_sq = 0.0;
};

Branches branches(const CoupledParams& p, int k) {
  if (k < 1) throw InputError("mode index k must be >= 1");
  const double kk = static_cast<double>(k) * k;
  const double a = kk + p.A, d = kk * kk + p.D;
  const Eigen2x2 e = eig_2x2_real(a, p.B, p.C, d);
  std::ostringstream where;
  where << "mode k = " << k << " with (A,B,C,D) = (" << p.A << ", " << p.B << ", " << p.C << ", " << p.D << ")";
  if (e.values[0].imag() != 0.0) throw InputError("complex eigenvalues at " + where.str());
  if (e.defective || e.values[0] == e.values[1]) throw InputError("coincident eigenvalues at " + where.str());
  if (!(e.values[0].real() > 0.0)) throw InputError("non-positive eigenvalue at " + where.str());

  const double first0 = std::abs(e.vectors[0][0].real());
  const double first1 = std::abs(e.vectors[1][0].real());
  int wave = 0;
  if (std::abs(first0 - first1) > 1e-12) {
    wave = first0 > first1 ? 0 : 1;
  } else {
    const double gap0 = std::abs(e.values[0].real() - a), gap1 = std::abs(e.values[1].real() - a);
    wave = std::abs(gap0 - gap1) > 1e-12 * std::max(1.0, a) && gap1 < gap0 ? 1 : 0;
  }
  const int beam = 1 - wave;
  Branches out;
  out.nu_sq = e.values[wave].real();
  out.omega_sq = e.values[beam].real();
  out.freq.nu = std::sqrt(out.nu_sq);
  out.freq.omega = std::sqrt(out.omega_sq);
  for (int c = 0; c < 2; ++c) {
    out.freq.wave_component[c] = e.vectors[wave][c].real();
    out.freq.beam_component[c] = e.vectors[beam][c].real();
  }
  return out;
}

// Coordinates of (x, 0) in the eigenvector basis: x = q_w v_w + q_b v_b.
void decompose(const ModeFrequencies& f, double x, double& q_wave, double& q_beam) {
  const double det = f.wave_component[0] * f.beam_component[1] - f.beam_component[0] * f.wave_component[1];
  q_wave = x * f.beam_component[1] / det;
  q_beam = -x * f.wave_component[1] / det;
}

}  // namespace

void CoupledParams::validate() const {
  if (k_max < 1) throw InputError("K_max must be >= 1");
  for (double v : {A, B, C, D})
    if (!std::isfinite(v)) throw InputError("coupled parameters must be finite");
  std::vector<double> all;
  for (int k = 1; k <= k_max; ++k) {
    const auto f = eigenfrequencies(*this, k);
    all.push_back(f.nu);
    all.push_back(f.omega);
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i] - all[i - 1] <= 1e-12 * all[i]) {
      std::ostringstream msg;
      msg << "eigenfrequencies coincide near " << all[i] << "; this parameter tuple is exceptional";
      throw InputError(msg.str());
    }
}

nlohmann::json CoupledParams::to_json() const {
  return {{"A", A}, {"B", B}, {"C", C}, {"D", D}, {"K_max", k_max}};
}

ModeFrequencies eigenfrequencies(const CoupledParams& p, int k) { return branches(p, k).freq; }

ModalEntry modal_solve(const CoupledParams& p, int k, double y0_k, double y1_k) {
  const ModeFrequencies f = eigenfrequencies(p, k);
  double p0w, p0b, p1w, p1b;
  decompose(f, y0_k, p0w, p0b);
  decompose(f, y1_k, p1w, p1b);
  // a(t) = sum over branches of v_0 (q0 cos(lt) + q1 sin(lt) / l).
  ModalEntry e;
  e.k = k;
  e.nu = f.nu;
  e.omega = f.omega;
  e.beta_plus = 0.5 * f.wave_component[0] * cplx(p0w, -p1w / f.nu);
  e.beta_minus = 0.5 * f.wave_component[0] * cplx(p0w, p1w / f.nu);
  e.alpha_plus = 0.5 * f.beam_component[0] * cplx(p0b, -p1b / f.omega);
  e.alpha_minus = 0.5 * f.beam_component[0] * cplx(p0b, p1b / f.omega);
  return e;
}

ModalCoefficients modal_solve_all(const CoupledParams& p, const std::vector<double>& y0,
                                  const std::vector<double>& y1) {
  if (y0.size() != y1.size()) throw InputError("y0 and y1 must have the same number of modes");
  ModalCoefficients mc;
  for (std::size_t i = 0; i < y0.size(); ++i)
    mc.modes.push_back(modal_solve(p, static_cast<int>(i) + 1, y0[i], y1[i]));
  return mc;
}

ModalState modal_trajectory(const CoupledParams& p, int k, double y0_k, double y1_k, double t) {
  const ModeFrequencies f = eigenfrequencies(p, k);
  double p0w, p0b, p1w, p1b;
  decompose(f, y0_k, p0w, p0b);
  decompose(f, y1_k, p1w, p1b);
  const double cw = std::cos(f.nu * t), sw = std::sin(f.nu * t);
  const double cb = std::cos(f.omega * t), sb = std::sin(f.omega * t);
  const double gw = p0w * cw + p1w * sw / f.nu, dgw = -p0w * f.nu * sw + p1w * cw;
  const double gb = p0b * cb + p1b * sb / f.omega, dgb = -p0b * f.omega * sb + p1b * cb;
  ModalState s;
  s.a = f.wave_component[0] * gw + f.beam_component[0] * gb;
  s.b = f.wave_component[1] * gw + f.beam_component[1] * gb;
  s.da = f.wave_component[0] * dgw + f.beam_component[0] * dgb;
  s.db = f.wave_component[1] * dgw + f.beam_component[1] * dgb;
  return s;
}

double energy(const std::vector<double>& y0, const std::vector<double>& y1) {
  if (y0.size() != y1.size()) throw InputError("y0 and y1 must have the same number of modes");
  double sum = 0.0;
  for (std::size_t i = 0; i < y0.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    sum += k * k * y0[i] * y0[i] + y1[i] * y1[i];
  }
  return 0.5 * kPi * sum;
}

cplx displacement(const ModalCoefficients& mc, double x, double t) {
  cplx u = 0.0;
  for (const auto& e : mc.modes) {
    const cplx amp = e.alpha_plus * std::exp(kI * (e.omega * t)) + e.alpha_minus * std::exp(-kI * (e.omega * t)) +
                     e.beta_plus * std::exp(kI * (e.nu * t)) + e.beta_minus * std::exp(-kI * (e.nu * t));
    u += amp * std::sin(e.k * x);
  }
  return u;
}

ExpPolynomial observation_signal(const ModalCoefficients& mc) {
  ExpPolynomial s;
  for (const auto& e : mc.modes) {
    const double k = e.k;
    s.add(e.omega, 0, k * e.alpha_plus);
    s.add(-e.omega, 0, k * e.alpha_minus);
    s.add(e.nu, 0, k * e.beta_plus);
    s.add(-e.nu, 0, k * e.beta_minus);
  }
  return s;
}

double observation_norm(const ModalCoefficients& mc, double T) {
  return norm_sq(observation_signal(mc), Domain::finite(T));
}

namespace {

// Frequencies ordered (omega, -omega, nu, -nu) per mode, and the linear map
// from real string data (y0_1..y0_K, y1_1..y1_K) to the observation
// coefficients in that order.
struct ObservationMap {
  std::vector<cplx> freqs;
  CMatrix L;
};

ObservationMap observation_map(const CoupledParams& p) {
  const int K = p.k_max;
  ObservationMap m;
  m.L = CMatrix(4 * K, 2 * K);
  for (int k = 1; k <= K; ++k) {
    const ModalEntry from_y0 = modal_solve(p, k, 1.0, 0.0);
    const ModalEntry from_y1 = modal_solve(p, k, 0.0, 1.0);
    m.freqs.insert(m.freqs.end(), {from_y0.omega, -from_y0.omega, from_y0.nu, -from_y0.nu});
    const std::size_t row = 4 * (k - 1);
    const ModalEntry* cols[2] = {&from_y0, &from_y1};
    for (int c = 0; c < 2; ++c) {
      const std::size_t col = (k - 1) + c * K;
      m.L(row, col) = double(k) * cols[c]->alpha_plus;
      m.L(row + 1, col) = double(k) * cols[c]->alpha_minus;
      m.L(row + 2, col) = double(k) * cols[c]->beta_plus;
      m.L(row + 3, col) = double(k) * cols[c]->beta_minus;
    }
  }
  return m;
}

}  // namespace

ObservabilityResult observability_ratio(const CoupledParams& p, double T, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("observability_ratio: trials must be >= 1");
  p.validate();
  const Domain dom = Domain::finite(T);
  const ObservationMap m = observation_map(p);
  const GramMatrix g = gram_functions(exponentials(m.freqs), dom);
  const int K = p.k_max;
  const std::size_t n = m.freqs.size();

  ObservabilityResult out;
  out.c_min = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> y0(K), y1(K), y(2 * K);
    for (int k = 1; k <= K; ++k) y0[k - 1] = gauss(rng) / (double(k) * k);
    for (int k = 1; k <= K; ++k) y1[k - 1] = gauss(rng) / (double(k) * k);
    std::copy(y0.begin(), y0.end(), y.begin());
    std::copy(y1.begin(), y1.end(), y.begin() + K);

    std::vector<cplx> c(n);
    for (std::size_t r = 0; r < n; ++r)
      for (int j = 0; j < 2 * K; ++j) c[r] += m.L(r, j) * y[j];
    cplx quad = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      cplx row = 0.0;
      for (std::size_t k = 0; k < n; ++k) row += g.base(j, k) * c[k];
      quad += std::conj(c[j]) * row;
    }
    const double ratio = quad.real() / energy(y0, y1);
    out.ratios.push_back(ratio);
    out.c_min = std::min(out.c_min, ratio);
  }
  return out;
}

double observability_constant(const CoupledParams& p, double T) {
  p.validate();
  const ObservationMap m = observation_map(p);
  const GramMatrix g = gram_functions(exponentials(m.freqs), Domain::finite(T));
  const int K = p.k_max;
  const CMatrix q = m.L.adjoint() * (g.base.matrix() * m.L);
  // Scale by E^{-1/2}, E = (pi/2) diag(k^2 ..., 1 ...).
  std::vector<double> scale(2 * K);
  for (int k = 1; k <= K; ++k) {
    scale[k - 1] = 1.0 / std::sqrt(0.5 * kPi * k * k);
    scale[k - 1 + K] = 1.0 / std::sqrt(0.5 * kPi);
  }
  CMatrix s(2 * K, 2 * K);
  for (int i = 0; i < 2 * K; ++i)
    for (int j = 0; j < 2 * K; ++j) {
      // Real data only see the real part of the Hermitian form.
      const double v = 0.5 * (q(i, j).real() + q(j, i).real());
      s(i, j) = v * scale[i] * scale[j];
    }
  return eig_hermitian(HermitianMatrix(std::move(s))).values.front();
}

Spectrum coupled_spectrum(const CoupledParams& p) {
  std::vector<cplx> values;
  for (int k = 1; k <= p.k_max; ++k) {
    const auto f = eigenfrequencies(p, k);
    values.insert(values.end(), {f.nu, -f.nu, f.omega, -f.omega});
  }
  return Spectrum::from_values(values);
}

ExpPolynomial two_point_dd_form(cplx alpha, cplx lambda, cplx beta, cplx mu) {
  const cplx nodes[2] = {lambda, mu};
  ExpPolynomial out = ExpPolynomial::exponential(lambda, alpha + beta);
  out -= gdd_residue(nodes).poly * (beta * (lambda - mu));
  return out;
}

double kl_ratio(const ModalEntry& e) {
  const double beta = std::norm(e.beta_plus) + std::norm(e.beta_minus);
  if (!(beta > 0.0)) throw DegeneracyError("kl_ratio: wave amplitudes vanish");
  return (std::norm(e.alpha_plus) + std::norm(e.alpha_minus)) / beta;
}

}  // namespace expbasis
