#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "vacuum/constants.hpp"
#include "vacuum/errors.hpp"

namespace vacuum::symplectic {

inline constexpr double kDefaultTolerance = 1e-9;

// a_out = alpha a_in + beta a_in^dagger.
template <typename Scalar = double>
class BogoliubovMap {
 public:
  using Complex = std::complex<Scalar>;
  using Block = Eigen::Matrix<Complex, 2, 2>;

  BogoliubovMap() = default;

  BogoliubovMap(Complex alpha, Complex beta, Scalar tol = Scalar(kDefaultTolerance))
      : alpha_(alpha), beta_(beta), tol_(tol) {
    if (!(tol > Scalar(0))) throw InvalidArgument("BogoliubovMap: tolerance must be positive");
    if (!(std::abs(scaled_residual()) <= tol)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "|alpha|^2 - |beta|^2 - 1 = %.3e (scaled %.3e) exceeds tolerance %.3e",
                    double(residual()), double(scaled_residual()), double(tol));
      throw SymplecticViolation(buf);
    }
  }

  static BogoliubovMap identity() { return {Complex(1), Complex(0)}; }

  // Acts on the column (a, a^dagger).
  static BogoliubovMap from_block(const Block& m, Scalar tol = Scalar(kDefaultTolerance)) {
    return {m(0, 0), m(0, 1), tol};
  }

  const Complex& alpha() const { return alpha_; }
  const Complex& beta() const { return beta_; }
  Scalar tolerance() const { return tol_; }

  // |alpha|^2 - |beta|^2 - 1
  Scalar residual() const { return std::norm(alpha_) - std::norm(beta_) - Scalar(1); }
  // residual() / max(1, |alpha|^2 + |beta|^2). Rounding alone leaves an error of
  // order eps |alpha|^2 in residual(), so strong squeezing is judged on this.
  Scalar scaled_residual() const {
    return residual() / std::max(Scalar(1), std::norm(alpha_) + std::norm(beta_));
  }

  Block block() const {
    Block m;
    m << alpha_, beta_, std::conj(beta_), std::conj(alpha_);
    return m;
  }

 private:
  Complex alpha_{1};
  Complex beta_{0};
  Scalar tol_ = Scalar(kDefaultTolerance);
};

using Bogoliubov = BogoliubovMap<double>;

template <typename Scalar>
BogoliubovMap<Scalar> make_bogoliubov(std::complex<Scalar> alpha, std::complex<Scalar> beta,
                                      Scalar tol = Scalar(kDefaultTolerance)) {
  return {alpha, beta, tol};
}

// The map of applying `first` and then `second`. The result is checked against
// ten times the looser of the two tolerances.
template <typename Scalar>
BogoliubovMap<Scalar> compose(const BogoliubovMap<Scalar>& first, const BogoliubovMap<Scalar>& second) {
  const Scalar tol = Scalar(10) * std::max(first.tolerance(), second.tolerance());
  return BogoliubovMap<Scalar>::from_block(second.block() * first.block(), tol);
}

template <typename Scalar>
BogoliubovMap<Scalar> inverse(const BogoliubovMap<Scalar>& map) {
  return {std::conj(map.alpha()), -map.beta(), map.tolerance()};
}

template <typename Scalar>
Scalar mean_photon_number(const BogoliubovMap<Scalar>& map) {
  return std::norm(map.beta());
}

struct SqueezeSpec {
  double r = 0.0;
  double phase = 0.0;

  SqueezeSpec() = default;
  SqueezeSpec(double r_, double phase_) : r(r_), phase(std::fmod(phase_, 2 * std::numbers::pi)) {
    if (!(r_ >= 0)) throw InvalidArgument("squeezing parameter must be non-negative");
    if (phase < 0) phase += 2 * std::numbers::pi;
  }
};

template <typename Scalar = double>
BogoliubovMap<Scalar> squeeze(const SqueezeSpec& spec) {
  using C = std::complex<Scalar>;
  return {C(std::cosh(Scalar(spec.r))), std::polar(Scalar(std::sinh(spec.r)), Scalar(spec.phase))};
}

template <typename Scalar = double>
BogoliubovMap<Scalar> squeeze(double r, double phase = 0.0) {
  return squeeze<Scalar>(SqueezeSpec(r, phase));
}

// Degenerate amplifier with pump strength eta: squeezing parameter 2 eta t.
inline Bogoliubov dpa_evolution(double eta, double t) {
  if (!(t >= 0)) throw InvalidArgument("dpa_evolution: t must be non-negative");
  return {std::cosh(2 * eta * t), std::sinh(2 * eta * t)};
}

// Non-degenerate amplifier: the signal/idler pair map with parameter eta t.
// Each of signal and idler ends up with sinh^2(eta t) photons.
inline Bogoliubov ndpa_evolution(double eta, double t) {
  if (!(t >= 0)) throw InvalidArgument("ndpa_evolution: t must be non-negative");
  return {std::cosh(eta * t), std::sinh(eta * t)};
}

struct QuadratureVariances {
  double var_X1;
  double var_X2;
};

// Vacuum variances normalised to 1; X1 is amplified, X2 squeezed.
inline QuadratureVariances quadrature_variances(double eta, double t) {
  if (!(t >= 0)) throw InvalidArgument("quadrature_variances: t must be non-negative");
  return {std::exp(4 * eta * t), std::exp(-4 * eta * t)};
}

// Squeezing below vacuum in dB for a variance relative to vacuum.
inline double variance_to_db(double variance) { return -10.0 * std::log10(variance); }

struct TwoModeState {
  double r = 0.0;
  double mode_frequency = 0.0;
  std::vector<double> fock_amplitudes;
  double truncation_error = 0.0;
};

// c_n = tanh^n r / cosh r up to the first n whose remaining tail
// tanh^(2(n+1)) r drops below tail_tol.
inline TwoModeState two_mode_amplitudes(double r, double tail_tol = 1e-12, double omega_s = 0.0) {
  if (!(r >= 0)) throw InvalidArgument("two_mode_amplitudes: r must be non-negative");
  if (!(tail_tol > 0 && tail_tol < 1)) throw InvalidArgument("two_mode_amplitudes: tail_tol outside (0, 1)");
  TwoModeState state;
  state.r = r;
  state.mode_frequency = omega_s;
  const double t = std::tanh(r);
  const double lambda = t * t;
  if (lambda >= 1.0) throw InvalidArgument("two_mode_amplitudes: r too large for double precision");
  long n_max = 0;
  if (lambda > 0) {
    n_max = static_cast<long>(std::ceil(std::log(tail_tol) / std::log(lambda))) - 1;
    if (n_max < 0) n_max = 0;
    while (n_max > 0 && std::pow(lambda, n_max) < tail_tol) --n_max;
    while (std::pow(lambda, n_max + 1) >= tail_tol) ++n_max;
  }
  if (n_max > 100'000'000) throw InvalidArgument("two_mode_amplitudes: Fock expansion too long");
  state.fock_amplitudes.resize(static_cast<std::size_t>(n_max) + 1);
  double c = 1.0 / std::cosh(r);
  for (auto& amplitude : state.fock_amplitudes) {
    amplitude = c;
    c *= t;
  }
  state.truncation_error = lambda > 0 ? std::pow(lambda, n_max + 1) : 0.0;
  return state;
}

// hbar omega / (k_B T) for the thermal reduced state of squeezing r, i.e.
// -ln tanh^2 r, evaluated without cancellation for large r.
inline double thermal_exponent(double r) {
  if (r < 1.0) return -2.0 * std::log(std::tanh(r));  // e^{-2r} would round to 1 for tiny r
  const double q = std::exp(-2 * r);
  return 2.0 * (std::log1p(q) - std::log1p(-q));
}

inline double invert_effective_temperature(double r, double omega_s,
                                           const constants::PhysicalConstants& k = constants::kCodata2018) {
  if (r == 0.0) throw ZeroSqueezing("effective temperature is zero for r = 0");
  if (!(r > 0) || !(omega_s > 0)) throw InvalidArgument("invert_effective_temperature: r, omega_s must be positive");
  return k.hbar * omega_s / (k.k_B * thermal_exponent(r));
}

// Thermal entropy of one half of the two-mode squeezed state, in nats.
inline double entanglement_entropy(double r, double omega_s,
                                   const constants::PhysicalConstants& k = constants::kCodata2018) {
  if (!(r >= 0) || !(omega_s > 0)) throw InvalidArgument("entanglement_entropy: need r >= 0, omega_s > 0");
  if (r == 0.0) return 0.0;
  const double T = invert_effective_temperature(r, omega_s, k);
  const double x = k.hbar * omega_s / (k.k_B * T);
  return -std::log(-std::expm1(-x)) + x / std::expm1(x);
}

// Squeezing of the Unruh-basis mode of frequency omega for accel_param a/c.
inline double unruh_squeezing(double omega, double accel_param) {
  if (!(omega > 0) || !(accel_param > 0)) throw InvalidArgument("unruh_squeezing: omega and accel_param must be positive");
  return std::atanh(std::exp(-std::numbers::pi * omega / accel_param));
}

}  // namespace vacuum::symplectic
