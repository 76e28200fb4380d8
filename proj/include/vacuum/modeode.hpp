#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "vacuum/constants.hpp"
#include "vacuum/symplectic.hpp"

namespace vacuum::modeode {

using Complex = std::complex<double>;

enum class ProfileKind { constant, sudden_step, tanh_ramp, sinusoidal_pump };

// omega(t) for the oscillator. Step and ramp kinds switch from omega_in to
// omega_out around `center`; a sudden step is a tanh ramp of width
// 1e-4 / max(omega_in, omega_out) unless `ramp_time` is set smaller.
// The pump is omega_in * (1 + pump_depth * sin(pump_frequency * t)).
struct FrequencyProfile {
  ProfileKind kind = ProfileKind::constant;
  double omega_in = 1.0;
  double omega_out = 1.0;
  double ramp_time = 0.0;
  double center = 0.0;
  double pump_depth = 0.0;
  double pump_frequency = 0.0;

  static FrequencyProfile constant(double omega);
  static FrequencyProfile sudden_step(double omega_in, double omega_out, double width = 0.0);
  static FrequencyProfile tanh_ramp(double omega_in, double omega_out, double ramp_time);
  static FrequencyProfile sinusoidal_pump(double omega0, double depth, double pump_frequency);

  double operator()(double t) const;
  // Width of the transition actually used by the step kinds.
  double effective_width() const;
  void validate() const;
};

struct ModeTrajectory {
  std::vector<double> times;
  std::vector<Complex> f;
  std::vector<Complex> fdot;
  std::vector<double> kg_norm_history;
  double mass = 1.0;
  long rejected_steps = 0;
};

struct ModeOptions {
  double tol = 1e-10;
  bool check_norm = true;
  constants::PhysicalConstants consts = constants::kCodata2018;
};

double zero_point_amplitude(double omega, double m, const constants::PhysicalConstants& k = constants::kCodata2018);

// f0 = x_zp, fdot0 = -i omega f0.
std::pair<Complex, Complex> positive_frequency_ic(double omega_in, double m,
                                                  const constants::PhysicalConstants& k = constants::kCodata2018);

// (i m / hbar) (conj(f) gdot - g conj(fdot))
Complex kg_inner(Complex f, Complex fdot, Complex g, Complex gdot, double m,
                 const constants::PhysicalConstants& k = constants::kCodata2018);

// Integrates f'' + omega(t)^2 f = 0 from arbitrary data at t0 to t1 (either
// direction). Every accepted step is recorded.
ModeTrajectory evolve_state(const FrequencyProfile& profile, double t0, double t1, Complex f0, Complex fdot0,
                            double m, const ModeOptions& opt = {});

// Same, starting from the positive-frequency solution for omega(t0). Throws
// NormDrift when the Klein-Gordon norm wanders by more than 10 tol per step.
ModeTrajectory evolve_mode(const FrequencyProfile& profile, double t0, double t1, double m,
                           const ModeOptions& opt = {});

// Projects (f, fdot) at time t onto the out modes of frequency omega_out
// (phase referenced to t).
symplectic::Bogoliubov project_out(Complex f, Complex fdot, double omega_out, double m, double tol = 1e-6,
                                   const constants::PhysicalConstants& k = constants::kCodata2018);

// alpha = <u_out, f>, beta = -<conj(u_out), f> at the final stored time.
symplectic::Bogoliubov extract_bogoliubov(const ModeTrajectory& traj, double omega_out,
                                          const constants::PhysicalConstants& k = constants::kCodata2018);

struct GrowthFit {
  double rate = 0.0;       // d ln|beta| / dt over the fitted samples
  double intercept = 0.0;
  double eta = 0.0;        // DPA pump strength with |beta| ~ sinh(2 eta t)
  double rms_residual = 0.0;
  std::vector<double> times;
  std::vector<double> abs_beta;
};

// Pumped oscillator sampled once per pump period (where omega = omega_in),
// then ln|beta| is fitted against t over the final half of the window.
GrowthFit pump_growth(const FrequencyProfile& profile, int periods, double m, const ModeOptions& opt = {});

// Least-squares line through (t, ln y).
GrowthFit fit_log_linear(const std::vector<double>& t, const std::vector<double>& y);

inline constexpr double kStandardGravity = constants::kStandardGravity;

// Closed-form parametric swing, theta0 e^{eps t/2} cos(ws t) + L0/(m ws l) e^{-eps t/2} sin(ws t).
double parametric_swing(double theta0, double L0, double m, double l, double epsilon, double t);

struct SwingSample {
  double t;
  double theta;
};

// The underlying modulated pendulum theta'' = -(ws + eps sin(2 ws t))^2 theta,
// started from theta0 and angular velocity L0/(m l) so that it shares its
// initial data with parametric_swing.
std::vector<SwingSample> modulated_pendulum(double theta0, double L0, double m, double l, double epsilon,
                                            const std::vector<double>& times, double tol = 1e-11);

}  // namespace vacuum::modeode
