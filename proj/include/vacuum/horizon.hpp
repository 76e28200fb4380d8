#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <utility>

#include "vacuum/constants.hpp"

namespace vacuum::horizon {

using constants::PhysicalConstants;
using constants::kCodata2018;

struct AccelerationParams {
  double proper_accel = 0.0;     // a, m/s^2
  double accel_param = 0.0;      // alpha = a / c, 1/s
  double vertex_distance = 0.0;  // xi = c^2 / a, m

  static AccelerationParams from_acceleration(double a, const PhysicalConstants& k = kCodata2018);
  static AccelerationParams from_rate(double alpha, const PhysicalConstants& k = kCodata2018);
};

struct MinkowskiPoint {
  double ct;
  double x;
};

MinkowskiPoint rindler_to_minkowski(double tau, const AccelerationParams& params);

// exp[i (Omega / alpha) e^{-alpha tau}] on the given proper-time grid.
Eigen::VectorXcd chirped_waveform(double Omega, const AccelerationParams& params, const Eigen::VectorXd& tau);

// Unruh temperature hbar alpha / (2 pi k_B).
double unruh_temperature(const AccelerationParams& params, const PhysicalConstants& k = kCodata2018);

enum class WindowKind { hann, erf_taper };

// How a finite record is turned into something with a clean transform.
// `erf_taper` multiplies by 0.5 [1 + erf((tau - taper_center) / (sqrt2 taper_width))]
// and subtracts step_value times the same kind of step centred on
// step_center with width step_width; the analytic transform of that step is
// added back afterwards, so a waveform that settles to a constant does not
// leak through the right edge. `hann` applies a plain Hann window.
struct WindowSpec {
  WindowKind kind = WindowKind::hann;
  double taper_center = 0.0;
  double taper_width = 0.0;
  double step_center = 0.0;
  double step_width = 0.0;
  std::complex<double> step_value{0.0, 0.0};

  std::string describe() const;
};

// Two-sided |f(omega)|^2 with f(omega) = integral phi(tau) e^{+i omega tau} dtau.
struct SpectrumSeries {
  Eigen::VectorXd frequencies;  // rad/s, strictly increasing, symmetric about 0
  Eigen::VectorXd power;
  WindowSpec window;
  std::optional<double> fitted_temperature;  // K, or natural units where documented
  double fit_residual = 0.0;
  bool insufficient_window = false;

  Eigen::Index size() const { return frequencies.size(); }
  // Index of the bin closest to omega.
  Eigen::Index index_of(double omega) const;
  double at(double omega) const { return power[index_of(omega)]; }
};

// Windowed FFT of uniform samples phi(tau0 + k dt). `rate` is the e-folding
// rate of the signal; records shorter than 5 / rate are flagged.
SpectrumSeries power_spectrum(const Eigen::VectorXcd& samples, double tau0, double dt, const WindowSpec& window,
                              double rate = 0.0);

struct ChirpOptions {
  double probe_over_alpha = 1.0;  // Omega / alpha
  int log2_samples = 0;           // 0: smallest power of two resolving the left edge
  double taper_center = -5.0;     // in units of 1 / alpha
  double taper_width = 0.5;
  double right_end = 40.0;
  double step_center = 1.0;
  double step_width = 0.5;
};

// Spectrum of the chirped waveform on a grid sized from the options.
SpectrumSeries unruh_spectrum(const AccelerationParams& params, const ChirpOptions& opt = {});

struct PlanckFit {
  double rate = 0.0;         // k_B T / hbar, rad/s
  double temperature = 0.0;  // K
  double log_amplitude = 0.0;
  double residual = 0.0;     // RMS of the log residual
  int points = 0;
};

// Fits ln P(-omega) = ln A - ln omega - ln(e^{omega / rate} - 1) over
// omega in [lo, hi]. Works in any unit system since only the rate is fitted.
PlanckFit planck_fit_rate(const SpectrumSeries& spectrum, double omega_lo, double omega_hi);

// planck_fit_rate with the rate converted to Kelvin; also stores the result
// on the spectrum.
PlanckFit planck_fit_1d(SpectrumSeries& spectrum, double omega_lo, double omega_hi,
                        const PhysicalConstants& k = kCodata2018);

double detailed_balance_ratio(double omega01, double T, const PhysicalConstants& k = kCodata2018);

struct BlackHole {
  double mass = 0.0;  // kg
  explicit BlackHole(double m);
};

double schwarzschild_radius(const BlackHole& bh, const PhysicalConstants& k = kCodata2018);

struct SurfaceGravity {
  double kappa;  // m/s^2
  double gamma;  // 1/s
};

SurfaceGravity surface_gravity(const BlackHole& bh, const PhysicalConstants& k = kCodata2018);
double hawking_temperature(const BlackHole& bh, const PhysicalConstants& k = kCodata2018);

// sqrt(1 - r_s / r)
double redshift_factor(const BlackHole& bh, double r, const PhysicalConstants& k = kCodata2018);
double static_acceleration(const BlackHole& bh, double r, const PhysicalConstants& k = kCodata2018);
double local_temperature(const BlackHole& bh, double r, const PhysicalConstants& k = kCodata2018);
double bh_area(const BlackHole& bh, const PhysicalConstants& k = kCodata2018);
double bh_entropy(const BlackHole& bh, const PhysicalConstants& k = kCodata2018);
double power_1d(double T, const PhysicalConstants& k = kCodata2018);
double pg_freefall_velocity(const BlackHole& bh, double r, const PhysicalConstants& k = kCodata2018);

}  // namespace vacuum::horizon
