#pragma once

#include <Eigen/Dense>
#include <optional>

#include "vacuum/constants.hpp"
#include "vacuum/horizon.hpp"

// dc-SQUID array transmission line: flux-tunable inductance, the speed of
// light seen by a moving flux pulse and the analogue horizon it produces.
namespace vacuum::squid {

using constants::PhysicalConstants;
using constants::kCodata2018;

struct SquidParams {
  double I_c = 0.0;   // single-junction critical current, A
  double C_J = 0.0;   // junction capacitance, F
  double C_0 = 0.0;   // capacitance to ground per cell, F
  double dx = 0.0;    // cell spacing, m
  double L_0 = 0.0;   // waveguide inductance per length, H/m (effective length only)

  void validate() const;
};

enum class PulseShape { none, tanh_step };

// Phi_ext(x) = (amplitude / 2) [1 + tanh(steepness x)] in the pulse frame.
struct FluxPulse {
  PulseShape shape = PulseShape::none;
  double amplitude = 0.0;  // Wb
  double velocity = 0.0;   // m/s
  double steepness = 0.0;  // 1/m

  void validate(const PhysicalConstants& k = kCodata2018) const;
  double flux(double x) const;
  double flux_gradient(double x) const;
};

// 2 I_c cos(pi Phi / Phi_0); SuppressedJunction when this vanishes.
double squid_critical_current(double I_c, double phi_ext, const PhysicalConstants& k = kCodata2018);

// Phi_0 / (2 pi I_c^s) * arcsin(x) / x with x = I / I_c^s.
double squid_inductance(double I, double I_c_s, const PhysicalConstants& k = kCodata2018);

double plasma_frequency(double I_c_s, double C_J, const PhysicalConstants& k = kCodata2018);

// dx / sqrt(L(Phi_ext(x)) C_0) at zero bias current.
double speed_of_light_profile(const SquidParams& p, const FluxPulse& pulse, double x,
                              const PhysicalConstants& k = kCodata2018);
double speed_of_light_gradient(const SquidParams& p, const FluxPulse& pulse, double x,
                               const PhysicalConstants& k = kCodata2018);

struct EffectiveMetric {
  double g_tt;  // -(c_s^2 - u^2)
  double g_tx;  // u
  double g_xx;  // 1
};

EffectiveMetric effective_metric(const SquidParams& p, const FluxPulse& pulse, double x,
                                 const PhysicalConstants& k = kCodata2018);

struct HorizonReport {
  std::optional<double> position;  // m, pulse frame
  double gradient = 0.0;           // |dc_s/dx| at the horizon, analytic
  double gradient_fd = 0.0;        // same by central differences
  double temperature = 0.0;        // K
  double temperature_fd = 0.0;
  double power = 0.0;              // W
  double edge_frequency = 0.0;     // largest |dc_s/dx| along the edge
  double plasma_limit = 0.0;       // omega_p^s at full pulse flux / 10
  bool within_plasma_limit = false;
};

struct HorizonOptions {
  double fd_step = 1e-4;  // in units of 1 / steepness
};

HorizonReport find_horizon(const SquidParams& p, const FluxPulse& pulse, const HorizonOptions& opt = {},
                           const PhysicalConstants& k = kCodata2018);

double analogue_hawking_temperature(const SquidParams& p, const FluxPulse& pulse,
                                    const PhysicalConstants& k = kCodata2018);

struct AnalogueSpectrum {
  horizon::SpectrumSeries spectrum;  // power: spectral flux hbar omega n / 2 pi, W per rad/s
  Eigen::VectorXd occupancy;        // 1 / (e^{hbar omega / k_B T} - 1)
};

AnalogueSpectrum analogue_spectrum(double T_H, const Eigen::VectorXd& omega_grid,
                                   const PhysicalConstants& k = kCodata2018);

// L / L_0
double squid_effective_length(double L, double L_0);

// length * sqrt(L(0) / L(t)) for an array resonator of the given length.
double array_effective_length(double length, double L_initial, double L_now);

}  // namespace vacuum::squid
