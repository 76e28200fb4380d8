#include "vacuum/squidsim.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vacuum/errors.hpp"
#include "vacuum/numerics/roots.hpp"

namespace vacuum::squid {

namespace {

constexpr double kPi = std::numbers::pi;

// cos(pi Phi / Phi_0) below this fraction counts as a suppressed junction.
constexpr double kSuppressed = 1e-12;

}  // namespace

void SquidParams::validate() const {
  if (!(I_c > 0) || !(C_J > 0) || !(C_0 > 0) || !(dx > 0) || !(L_0 > 0)) {
    throw InvalidArgument("SQUID parameters must all be positive");
  }
}

void FluxPulse::validate(const PhysicalConstants& k) const {
  if (shape == PulseShape::none) return;
  if (!(amplitude >= 0) || !(amplitude < 0.5 * k.flux_quantum)) {
    throw InvalidArgument("pulse amplitude must lie in [0, Phi_0 / 2)");
  }
  if (!(steepness > 0)) throw InvalidArgument("pulse steepness must be positive");
}

double FluxPulse::flux(double x) const {
  if (shape == PulseShape::none) return 0.0;
  return 0.5 * amplitude * (1.0 + std::tanh(steepness * x));
}

double FluxPulse::flux_gradient(double x) const {
  if (shape == PulseShape::none) return 0.0;
  const double c = std::cosh(steepness * x);
  return 0.5 * amplitude * steepness / (c * c);
}

double squid_critical_current(double I_c, double phi_ext, const PhysicalConstants& k) {
  const double c = std::cos(kPi * phi_ext / k.flux_quantum);
  if (!(c > kSuppressed)) {
    throw SuppressedJunction("SQUID critical current vanishes at Phi_ext = " +
                             std::to_string(phi_ext / k.flux_quantum) + " Phi_0");
  }
  return 2.0 * I_c * c;
}

double squid_inductance(double I, double I_c_s, const PhysicalConstants& k) {
  if (!(I_c_s > 0)) throw InvalidArgument("critical current must be positive");
  const double x = I / I_c_s;
  if (!(std::abs(x) < 1)) throw OverCritical("bias current at or above the SQUID critical current");
  const double ratio = std::abs(x) < 1e-8 ? 1.0 + x * x / 6.0 : std::asin(x) / x;
  return k.flux_quantum / (2 * kPi * I_c_s) * ratio;
}

double plasma_frequency(double I_c_s, double C_J, const PhysicalConstants& k) {
  if (!(I_c_s > 0) || !(C_J > 0)) throw InvalidArgument("plasma_frequency: arguments must be positive");
  return std::sqrt(2 * kPi * I_c_s / (2 * C_J * k.flux_quantum));
}

double speed_of_light_profile(const SquidParams& p, const FluxPulse& pulse, double x, const PhysicalConstants& k) {
  const double L = squid_inductance(0.0, squid_critical_current(p.I_c, pulse.flux(x), k), k);
  return p.dx / std::sqrt(L * p.C_0);
}

double speed_of_light_gradient(const SquidParams& p, const FluxPulse& pulse, double x, const PhysicalConstants& k) {
  // c_s ~ sqrt(cos theta) with theta = pi Phi / Phi_0
  const double theta = kPi * pulse.flux(x) / k.flux_quantum;
  const double dtheta = kPi * pulse.flux_gradient(x) / k.flux_quantum;
  return -0.5 * speed_of_light_profile(p, pulse, x, k) * std::tan(theta) * dtheta;
}

EffectiveMetric effective_metric(const SquidParams& p, const FluxPulse& pulse, double x, const PhysicalConstants& k) {
  const double c = speed_of_light_profile(p, pulse, x, k);
  const double u = pulse.velocity;
  return {-(c * c - u * u), u, 1.0};
}

HorizonReport find_horizon(const SquidParams& p, const FluxPulse& pulse, const HorizonOptions& opt,
                           const PhysicalConstants& k) {
  p.validate();
  pulse.validate(k);
  const double u = pulse.velocity;
  if (!(u > 0)) throw InvalidArgument("pulse velocity must be positive");
  if (pulse.shape == PulseShape::none || pulse.amplitude == 0.0) throw NoHorizon("flat speed-of-light profile");

  // The profile falls monotonically from c_s(0 flux) to c_s(full flux).
  const double c_max = p.dx / std::sqrt(squid_inductance(0.0, squid_critical_current(p.I_c, 0.0, k), k) * p.C_0);
  const double c_min =
      p.dx / std::sqrt(squid_inductance(0.0, squid_critical_current(p.I_c, pulse.amplitude, k), k) * p.C_0);
  if (!(u < c_max)) throw NoHorizon("pulse is not slower than the unbiased speed of light");
  if (!(u > c_min)) throw NoHorizon("pulse is slower than the speed of light everywhere");

  auto f = [&](double x) { return speed_of_light_profile(p, pulse, x, k) - u; };
  const double scale = 1.0 / pulse.steepness;
  double lo = -scale, hi = scale;
  for (int i = 0; f(lo) <= 0; ++i) {
    if (i > 60) throw NoHorizon("no sign change found on the fast side");
    lo *= 2;
  }
  for (int i = 0; f(hi) >= 0; ++i) {
    if (i > 60) throw NoHorizon("no sign change found on the slow side");
    hi *= 2;
  }
  const double x_h = numerics::bisect(f, lo, hi);

  HorizonReport rep;
  rep.position = x_h;
  rep.gradient = std::abs(speed_of_light_gradient(p, pulse, x_h, k));
  const double h = opt.fd_step * scale;
  rep.gradient_fd = std::abs((speed_of_light_profile(p, pulse, x_h + h, k) -
                              speed_of_light_profile(p, pulse, x_h - h, k)) / (2 * h));
  rep.temperature = k.hbar * rep.gradient / (2 * kPi * k.k_B);
  rep.temperature_fd = k.hbar * rep.gradient_fd / (2 * kPi * k.k_B);
  rep.power = horizon::power_1d(rep.temperature, k);

  const auto steepest = numerics::brent_minimize(
      [&](double x) { return -std::abs(speed_of_light_gradient(p, pulse, x, k)); }, -5 * scale, 5 * scale, 1e-10);
  rep.edge_frequency = -steepest.value;
  rep.plasma_limit = plasma_frequency(squid_critical_current(p.I_c, pulse.amplitude, k), p.C_J, k) / 10.0;
  rep.within_plasma_limit = rep.edge_frequency <= rep.plasma_limit;
  return rep;
}

double analogue_hawking_temperature(const SquidParams& p, const FluxPulse& pulse, const PhysicalConstants& k) {
  return find_horizon(p, pulse, {}, k).temperature;
}

AnalogueSpectrum analogue_spectrum(double T_H, const Eigen::VectorXd& omega_grid, const PhysicalConstants& k) {
  if (!(T_H > 0)) throw InvalidArgument("analogue_spectrum: T_H must be positive");
  AnalogueSpectrum out;
  out.spectrum.frequencies = omega_grid;
  out.occupancy = omega_grid.unaryExpr([&](double w) { return 1.0 / std::expm1(k.hbar * w / (k.k_B * T_H)); });
  out.spectrum.power = (k.hbar / (2 * kPi)) * omega_grid.cwiseProduct(out.occupancy);
  out.spectrum.fitted_temperature = T_H;
  return out;
}

double squid_effective_length(double L, double L_0) {
  if (!(L > 0) || !(L_0 > 0)) throw InvalidArgument("inductances must be positive");
  return L / L_0;
}

double array_effective_length(double length, double L_initial, double L_now) {
  if (!(length > 0) || !(L_initial > 0) || !(L_now > 0)) throw InvalidArgument("arguments must be positive");
  return length * std::sqrt(L_initial / L_now);
}

}  // namespace vacuum::squid
