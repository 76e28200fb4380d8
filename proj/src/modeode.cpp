#include "vacuum/modeode.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vacuum/errors.hpp"
#include "vacuum/numerics/ode.hpp"

namespace vacuum::modeode {

namespace {

using State = Eigen::Matrix<Complex, 2, 1>;

double smooth_step(double t, double center, double width) { return 0.5 * (1.0 + std::tanh((t - center) / width)); }

// Breakpoints that keep the adaptive integrator from striding over a narrow
// transition.
std::vector<double> segment_points(const FrequencyProfile& p, double t0, double t1) {
  std::vector<double> pts{t0};
  if (p.kind == ProfileKind::sudden_step || p.kind == ProfileKind::tanh_ramp) {
    const double w = p.effective_width();
    const double lo = std::min(t0, t1), hi = std::max(t0, t1);
    std::vector<double> inner;
    for (double s : {-20.0, 20.0}) {
      const double b = p.center + s * w;
      if (b > lo && b < hi) inner.push_back(b);
    }
    if (t1 < t0) std::reverse(inner.begin(), inner.end());
    pts.insert(pts.end(), inner.begin(), inner.end());
  }
  pts.push_back(t1);
  return pts;
}

// Scaled state (g, h) = (f / x_ref, fdot / (x_ref omega_ref)).
struct Scaling {
  double x_ref;
  double omega_ref;
};

double scaled_norm(const State& y) { return -std::imag(std::conj(y[0]) * y[1]); }

}  // namespace

FrequencyProfile FrequencyProfile::constant(double omega) {
  FrequencyProfile p;
  p.kind = ProfileKind::constant;
  p.omega_in = p.omega_out = omega;
  p.validate();
  return p;
}

FrequencyProfile FrequencyProfile::sudden_step(double omega_in, double omega_out, double width) {
  FrequencyProfile p;
  p.kind = ProfileKind::sudden_step;
  p.omega_in = omega_in;
  p.omega_out = omega_out;
  p.ramp_time = width;
  p.validate();
  return p;
}

FrequencyProfile FrequencyProfile::tanh_ramp(double omega_in, double omega_out, double ramp_time) {
  FrequencyProfile p;
  p.kind = ProfileKind::tanh_ramp;
  p.omega_in = omega_in;
  p.omega_out = omega_out;
  p.ramp_time = ramp_time;
  p.validate();
  return p;
}

FrequencyProfile FrequencyProfile::sinusoidal_pump(double omega0, double depth, double pump_frequency) {
  FrequencyProfile p;
  p.kind = ProfileKind::sinusoidal_pump;
  p.omega_in = p.omega_out = omega0;
  p.pump_depth = depth;
  p.pump_frequency = pump_frequency;
  p.validate();
  return p;
}

double FrequencyProfile::effective_width() const {
  const double default_width = 1e-4 / std::max(omega_in, omega_out);
  if (kind == ProfileKind::sudden_step) return ramp_time > 0 ? ramp_time : default_width;
  return ramp_time;
}

double FrequencyProfile::operator()(double t) const {
  switch (kind) {
    case ProfileKind::constant:
      return omega_in;
    case ProfileKind::sudden_step:
    case ProfileKind::tanh_ramp:
      return omega_in + (omega_out - omega_in) * smooth_step(t, center, effective_width());
    case ProfileKind::sinusoidal_pump:
      return omega_in * (1.0 + pump_depth * std::sin(pump_frequency * t));
  }
  return omega_in;
}

void FrequencyProfile::validate() const {
  if (!(omega_in > 0) || !(omega_out > 0)) throw InvalidArgument("frequency profile: omega must be positive");
  if (kind == ProfileKind::tanh_ramp && !(ramp_time > 0)) throw InvalidArgument("tanh ramp needs ramp_time > 0");
  if (kind == ProfileKind::sudden_step && ramp_time < 0) throw InvalidArgument("step width must be >= 0");
  if (kind == ProfileKind::sinusoidal_pump) {
    if (!(std::abs(pump_depth) < 1)) throw InvalidArgument("pump depth must satisfy |eps| < 1 to keep omega > 0");
    if (!(pump_frequency > 0)) throw InvalidArgument("pump frequency must be positive");
  }
}

double zero_point_amplitude(double omega, double m, const constants::PhysicalConstants& k) {
  return std::sqrt(k.hbar / (2.0 * m * omega));
}

std::pair<Complex, Complex> positive_frequency_ic(double omega_in, double m, const constants::PhysicalConstants& k) {
  if (!(omega_in > 0) || !(m > 0)) throw InvalidArgument("positive_frequency_ic: omega and m must be positive");
  const Complex f0 = zero_point_amplitude(omega_in, m, k);
  return {f0, Complex(0, -omega_in) * f0};
}

Complex kg_inner(Complex f, Complex fdot, Complex g, Complex gdot, double m, const constants::PhysicalConstants& k) {
  return Complex(0, m / k.hbar) * (std::conj(f) * gdot - g * std::conj(fdot));
}

ModeTrajectory evolve_state(const FrequencyProfile& profile, double t0, double t1, Complex f0, Complex fdot0,
                            double m, const ModeOptions& opt) {
  profile.validate();
  if (!(m > 0)) throw InvalidArgument("evolve_state: mass must be positive");
  const Scaling sc{zero_point_amplitude(profile(t0), m, opt.consts), profile(t0)};

  auto rhs = [&](double t, const State& y) {
    const double w = profile(t);
    State d;
    d << sc.omega_ref * y[1], -(w * w / sc.omega_ref) * y[0];
    return d;
  };

  State y;
  y << f0 / sc.x_ref, fdot0 / (sc.x_ref * sc.omega_ref);

  ModeTrajectory traj;
  traj.mass = m;
  auto record = [&](double t, const State& s) {
    traj.times.push_back(t);
    traj.f.push_back(s[0] * sc.x_ref);
    traj.fdot.push_back(s[1] * sc.x_ref * sc.omega_ref);
    traj.kg_norm_history.push_back(scaled_norm(s));
  };
  record(t0, y);

  numerics::AdaptiveOptions ode;
  ode.rel_tol = opt.tol;
  ode.abs_tol = opt.tol;
  const double period = 2 * std::numbers::pi / std::max({profile.omega_in, profile.omega_out, profile(t0)});
  const auto pts = segment_points(profile, t0, t1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    ode.initial_step = std::min(std::abs(pts[i + 1] - pts[i]), 0.01 * period);
    if (profile.kind == ProfileKind::sudden_step || profile.kind == ProfileKind::tanh_ramp) {
      ode.initial_step = std::min(ode.initial_step, 0.1 * profile.effective_width());
    }
    const auto stats = numerics::integrate_dopri5(rhs, pts[i], pts[i + 1], y, ode, record);
    traj.rejected_steps += stats.rejected;
  }
  return traj;
}

ModeTrajectory evolve_mode(const FrequencyProfile& profile, double t0, double t1, double m, const ModeOptions& opt) {
  if (!(t0 < t1)) throw InvalidArgument("evolve_mode: need t0 < t1");
  const auto [f0, fdot0] = positive_frequency_ic(profile(t0), m, opt.consts);
  ModeTrajectory traj = evolve_state(profile, t0, t1, f0, fdot0, m, opt);
  if (opt.check_norm) {
    const double steps = static_cast<double>(traj.times.size());
    const double limit = 10.0 * opt.tol * std::max(1.0, steps);
    for (std::size_t i = 0; i < traj.kg_norm_history.size(); ++i) {
      const double drift = std::abs(traj.kg_norm_history[i] - 1.0);
      if (drift > limit) {
        throw NormDrift("Klein-Gordon norm drifted by " + std::to_string(drift) + " at t = " +
                        std::to_string(traj.times[i]));
      }
    }
  }
  return traj;
}

symplectic::Bogoliubov project_out(Complex f, Complex fdot, double omega_out, double m, double tol,
                                   const constants::PhysicalConstants& k) {
  const auto [u, udot] = positive_frequency_ic(omega_out, m, k);
  const Complex alpha = kg_inner(u, udot, f, fdot, m, k);
  const Complex beta = -kg_inner(std::conj(u), std::conj(udot), f, fdot, m, k);
  return {alpha, beta, tol};
}

symplectic::Bogoliubov extract_bogoliubov(const ModeTrajectory& traj, double omega_out,
                                          const constants::PhysicalConstants& k) {
  if (traj.times.empty()) throw InvalidArgument("extract_bogoliubov: empty trajectory");
  return project_out(traj.f.back(), traj.fdot.back(), omega_out, traj.mass, 1e-6, k);
}

GrowthFit fit_log_linear(const std::vector<double>& t, const std::vector<double>& y) {
  const Eigen::Index n = static_cast<Eigen::Index>(t.size());
  if (n < 2 || y.size() != t.size()) throw InvalidArgument("fit_log_linear: need at least two samples");
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = t[i];
    rhs[i] = std::log(y[i]);
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  GrowthFit fit;
  fit.intercept = coef[0];
  fit.rate = coef[1];
  fit.eta = 0.5 * fit.rate;
  fit.rms_residual = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(n));
  fit.times = t;
  fit.abs_beta = y;
  return fit;
}

GrowthFit pump_growth(const FrequencyProfile& profile, int periods, double m, const ModeOptions& opt) {
  if (profile.kind != ProfileKind::sinusoidal_pump) throw InvalidArgument("pump_growth: needs a sinusoidal pump");
  if (periods < 4) throw InvalidArgument("pump_growth: need at least 4 pump periods");
  const double period = 2 * std::numbers::pi / profile.pump_frequency;
  auto [f, fdot] = positive_frequency_ic(profile(0.0), m, opt.consts);
  std::vector<double> all_t, all_beta;
  ModeOptions seg = opt;
  seg.check_norm = false;
  for (int k = 1; k <= periods; ++k) {
    const ModeTrajectory piece = evolve_state(profile, (k - 1) * period, k * period, f, fdot, m, seg);
    f = piece.f.back();
    fdot = piece.fdot.back();
    const double growth_scale = std::norm(f) / std::norm(zero_point_amplitude(profile.omega_in, m, opt.consts));
    const auto map = project_out(f, fdot, profile.omega_in, m, std::max(1e-6, 1e-9 * growth_scale), opt.consts);
    all_t.push_back(k * period);
    all_beta.push_back(std::abs(map.beta()));
  }
  const std::size_t first = all_t.size() / 2;
  GrowthFit fit = fit_log_linear({all_t.begin() + first, all_t.end()}, {all_beta.begin() + first, all_beta.end()});
  fit.times = all_t;
  fit.abs_beta = all_beta;
  return fit;
}

double parametric_swing(double theta0, double L0, double m, double l, double epsilon, double t) {
  if (!(l > 0) || !(m > 0)) throw InvalidArgument("parametric_swing: l and m must be positive");
  const double ws = std::sqrt(kStandardGravity / l);
  return theta0 * std::exp(0.5 * epsilon * t) * std::cos(ws * t) +
         L0 / (m * ws * l) * std::exp(-0.5 * epsilon * t) * std::sin(ws * t);
}

std::vector<SwingSample> modulated_pendulum(double theta0, double L0, double m, double l, double epsilon,
                                            const std::vector<double>& times, double tol) {
  if (!(l > 0) || !(m > 0)) throw InvalidArgument("modulated_pendulum: l and m must be positive");
  const double ws = std::sqrt(kStandardGravity / l);
  auto rhs = [&](double t, const Eigen::Vector2d& y) {
    const double w = ws + epsilon * std::sin(2 * ws * t);
    return Eigen::Vector2d(y[1], -w * w * y[0]);
  };
  Eigen::Vector2d y(theta0, L0 / (m * l));
  numerics::AdaptiveOptions ode;
  ode.rel_tol = tol;
  ode.abs_tol = tol;
  ode.initial_step = 0.01 / ws;
  std::vector<SwingSample> out;
  out.reserve(times.size());
  double t = 0.0;
  for (double target : times) {
    if (target < t) throw InvalidArgument("modulated_pendulum: times must be non-decreasing from 0");
    numerics::integrate_dopri5(rhs, t, target, y, ode);
    t = target;
    out.push_back({t, y[0]});
  }
  return out;
}

}  // namespace vacuum::modeode
