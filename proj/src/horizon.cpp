#include "vacuum/horizon.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "vacuum/errors.hpp"
#include "vacuum/numerics/roots.hpp"

namespace vacuum::horizon {

namespace {

constexpr double kPi = std::numbers::pi;

double erf_step(double x, double center, double width) {
  return 0.5 * (1.0 + std::erf((x - center) / (std::numbers::sqrt2 * width)));
}

// ln(e^x - 1) without overflow.
double log_expm1(double x) { return x > 30.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x)); }

std::size_t next_pow2(double n) {
  std::size_t p = 1;
  while (static_cast<double>(p) < n) p <<= 1;
  return p;
}

}  // namespace

AccelerationParams AccelerationParams::from_acceleration(double a, const PhysicalConstants& k) {
  if (!(a > 0)) throw InvalidArgument("acceleration must be positive");
  return {a, a / k.c, k.c * k.c / a};
}

AccelerationParams AccelerationParams::from_rate(double alpha, const PhysicalConstants& k) {
  if (!(alpha > 0)) throw InvalidArgument("acceleration parameter must be positive");
  return {alpha * k.c, alpha, k.c / alpha};
}

MinkowskiPoint rindler_to_minkowski(double tau, const AccelerationParams& params) {
  const double phase = params.accel_param * tau;
  return {params.vertex_distance * std::sinh(phase), params.vertex_distance * std::cosh(phase)};
}

Eigen::VectorXcd chirped_waveform(double Omega, const AccelerationParams& params, const Eigen::VectorXd& tau) {
  const double alpha = params.accel_param;
  const double scale = Omega / alpha;
  return tau.unaryExpr([&](double t) { return std::polar(1.0, scale * std::exp(-alpha * t)); });
}

double unruh_temperature(const AccelerationParams& params, const PhysicalConstants& k) {
  return k.hbar * params.accel_param / (2 * kPi * k.k_B);
}

std::string WindowSpec::describe() const {
  std::ostringstream os;
  if (kind == WindowKind::hann) {
    os << "hann";
  } else {
    os << "erf_taper(center=" << taper_center << ", width=" << taper_width << ", step_center=" << step_center
       << ", step_width=" << step_width << ")";
  }
  return os.str();
}

Eigen::Index SpectrumSeries::index_of(double omega) const {
  if (frequencies.size() == 0) throw InvalidArgument("empty spectrum");
  const double w0 = frequencies[0];
  const double dw = frequencies.size() > 1 ? frequencies[1] - frequencies[0] : 1.0;
  auto i = static_cast<Eigen::Index>(std::llround((omega - w0) / dw));
  if (i < 0 || i >= frequencies.size()) throw OutOfGrid("frequency outside spectrum grid");
  return i;
}

SpectrumSeries power_spectrum(const Eigen::VectorXcd& samples, double tau0, double dt, const WindowSpec& window,
                              double rate) {
  const Eigen::Index n = samples.size();
  if (n < 2 || !(dt > 0)) throw InvalidArgument("power_spectrum: need at least two samples and dt > 0");

  std::vector<std::complex<double>> psi(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double tau = tau0 + static_cast<double>(k) * dt;
    if (window.kind == WindowKind::hann) {
      const double w = 0.5 * (1.0 - std::cos(2 * kPi * static_cast<double>(k) / static_cast<double>(n - 1)));
      psi[k] = samples[k] * w;
    } else {
      psi[k] = samples[k] * erf_step(tau, window.taper_center, window.taper_width) -
               window.step_value * erf_step(tau, window.step_center, window.step_width);
    }
  }

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<std::complex<double>> out;
  fft.inv(out, psi);

  SpectrumSeries s;
  s.window = window;
  s.frequencies.resize(n);
  s.power.resize(n);
  const double dw = 2 * kPi / (static_cast<double>(n) * dt);
  const Eigen::Index half = n / 2;
  for (Eigen::Index j = 0; j < n; ++j) {
    // Signed bin: j < half maps to -(half - j).
    const Eigen::Index signed_bin = j - half;
    const Eigen::Index src = (signed_bin + n) % n;
    const double w = static_cast<double>(signed_bin) * dw;
    std::complex<double> F = out[src] * dt * std::polar(1.0, w * tau0);
    if (window.kind == WindowKind::erf_taper && signed_bin != 0) {
      const double sw = window.step_width;
      F += window.step_value * std::complex<double>(0, 1) * std::polar(1.0, w * window.step_center) *
           std::exp(-0.5 * w * w * sw * sw) / w;
    }
    s.frequencies[j] = w;
    s.power[j] = std::norm(F);
  }
  if (rate > 0 && static_cast<double>(n) * dt < 5.0 / rate) s.insufficient_window = true;
  return s;
}

SpectrumSeries unruh_spectrum(const AccelerationParams& params, const ChirpOptions& opt) {
  const double alpha = params.accel_param;
  if (!(alpha > 0)) throw InvalidArgument("unruh_spectrum: alpha must be positive");
  const double Omega = opt.probe_over_alpha * alpha;
  const double t_left = (opt.taper_center - 6.0 * opt.taper_width) / alpha;
  const double t_right = opt.right_end / alpha;
  if (!(t_right > t_left)) throw InvalidArgument("unruh_spectrum: empty window");
  const double f_max = Omega * std::exp(-alpha * t_left);
  const std::size_t n = opt.log2_samples > 0 ? (std::size_t{1} << opt.log2_samples)
                                             : next_pow2((t_right - t_left) * 2.0 * f_max / kPi);
  const double dt = (t_right - t_left) / static_cast<double>(n);
  const Eigen::VectorXd tau =
      Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(n), t_left, t_left + dt * static_cast<double>(n - 1));

  WindowSpec window;
  window.kind = WindowKind::erf_taper;
  window.taper_center = opt.taper_center / alpha;
  window.taper_width = opt.taper_width / alpha;
  window.step_center = opt.step_center / alpha;
  window.step_width = opt.step_width / alpha;
  window.step_value = 1.0;
  return power_spectrum(chirped_waveform(Omega, params, tau), t_left, dt, window, alpha);
}

PlanckFit planck_fit_rate(const SpectrumSeries& spectrum, double omega_lo, double omega_hi) {
  if (!(omega_lo > 0) || !(omega_hi > omega_lo)) throw InvalidArgument("planck fit: need 0 < lo < hi");
  std::vector<double> w, logp;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double omega = spectrum.frequencies[i];
    if (omega < omega_lo || omega > omega_hi) continue;
    const double p = spectrum.at(-omega);
    if (!(p > 0)) throw FitDiverged("planck fit: non-positive power in band");
    w.push_back(omega);
    logp.push_back(std::log(p));
  }
  if (w.size() < 3) throw FitDiverged("planck fit: fewer than three points in band");

  const double m = static_cast<double>(w.size());
  auto residuals = [&](double rate, double& mean) {
    std::vector<double> r(w.size());
    mean = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      r[i] = logp[i] + std::log(w[i]) + log_expm1(w[i] / rate);
      mean += r[i];
    }
    mean /= m;
    return r;
  };
  auto cost = [&](double log_rate) {
    double mean;
    const auto r = residuals(std::exp(log_rate), mean);
    double sum = 0.0;
    for (double v : r) sum += (v - mean) * (v - mean);
    return sum;
  };

  const double lo = std::log(omega_lo * 1e-3), hi = std::log(10.0 * omega_hi);
  const auto best = numerics::brent_minimize(cost, lo, hi, 1e-12);
  const double margin = 1e-6 * (hi - lo);
  if (best.x <= lo + margin || best.x >= hi - margin) {
    throw FitDiverged("planck fit: temperature ran to the edge of the search interval");
  }
  PlanckFit fit;
  fit.rate = std::exp(best.x);
  double mean;
  residuals(fit.rate, mean);
  fit.log_amplitude = mean;
  fit.residual = std::sqrt(best.value / m);
  fit.points = static_cast<int>(w.size());
  return fit;
}

PlanckFit planck_fit_1d(SpectrumSeries& spectrum, double omega_lo, double omega_hi, const PhysicalConstants& k) {
  PlanckFit fit = planck_fit_rate(spectrum, omega_lo, omega_hi);
  fit.temperature = k.hbar * fit.rate / k.k_B;
  spectrum.fitted_temperature = fit.temperature;
  spectrum.fit_residual = fit.residual;
  return fit;
}

double detailed_balance_ratio(double omega01, double T, const PhysicalConstants& k) {
  if (!(T > 0)) throw InvalidArgument("detailed_balance_ratio: T must be positive");
  return std::exp(-k.hbar * omega01 / (k.k_B * T));
}

BlackHole::BlackHole(double m) : mass(m) {
  if (!(m > 0)) throw InvalidArgument("black hole mass must be positive");
}

double schwarzschild_radius(const BlackHole& bh, const PhysicalConstants& k) {
  return 2.0 * k.G * bh.mass / (k.c * k.c);
}

SurfaceGravity surface_gravity(const BlackHole& bh, const PhysicalConstants& k) {
  const double kappa = std::pow(k.c, 4) / (4.0 * k.G * bh.mass);
  return {kappa, kappa / k.c};
}

double hawking_temperature(const BlackHole& bh, const PhysicalConstants& k) {
  return k.hbar * surface_gravity(bh, k).gamma / (2 * kPi * k.k_B);
}

double redshift_factor(const BlackHole& bh, double r, const PhysicalConstants& k) {
  const double rs = schwarzschild_radius(bh, k);
  if (!(r > rs)) throw InsideHorizon("r = " + std::to_string(r) + " m is not outside r_s = " + std::to_string(rs));
  return std::sqrt((r - rs) / r);
}

double static_acceleration(const BlackHole& bh, double r, const PhysicalConstants& k) {
  const double V = redshift_factor(bh, r, k);
  return k.G * bh.mass / (r * r * V);
}

double local_temperature(const BlackHole& bh, double r, const PhysicalConstants& k) {
  return hawking_temperature(bh, k) / redshift_factor(bh, r, k);
}

double bh_area(const BlackHole& bh, const PhysicalConstants& k) {
  const double rs = schwarzschild_radius(bh, k);
  return 4 * kPi * rs * rs;
}

double bh_entropy(const BlackHole& bh, const PhysicalConstants& k) {
  return k.k_B * k.c * k.c * k.c * bh_area(bh, k) / (4.0 * k.hbar * k.G);
}

double power_1d(double T, const PhysicalConstants& k) {
  if (!(T >= 0)) throw InvalidArgument("power_1d: T must be non-negative");
  return kPi * k.k_B * k.k_B * T * T / (12.0 * k.hbar);
}

double pg_freefall_velocity(const BlackHole& bh, double r, const PhysicalConstants& k) {
  if (!(r > 0)) throw InvalidArgument("pg_freefall_velocity: r must be positive");
  return k.c * std::sqrt(schwarzschild_radius(bh, k) / r);
}

}  // namespace vacuum::horizon
