#include "vacuum/dce.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "vacuum/errors.hpp"
#include "vacuum/numerics/quadrature.hpp"
#include "vacuum/numerics/roots.hpp"

namespace vacuum::dce {

namespace {

constexpr double kPi = std::numbers::pi;

struct Envelope {
  double w, d1, d2;
};

Envelope half_cosine_up(double s, double ramp) {
  const double a = kPi / ramp;
  return {0.5 * (1 - std::cos(a * s)), 0.5 * a * std::sin(a * s), 0.5 * a * a * std::cos(a * s)};
}

// Values closer than this (relative to z0) are the same event.
constexpr double kMergeTolerance = 1e-9;

}  // namespace

MirrorTrajectory MirrorTrajectory::static_mirror(double z0) {
  MirrorTrajectory m;
  m.kind = TrajectoryKind::static_mirror;
  m.z0 = z0;
  m.validate();
  return m;
}

MirrorTrajectory MirrorTrajectory::sinusoidal(double z0, double epsilon, double drive_frequency, double drive_time,
                                              double ramp_time) {
  MirrorTrajectory m;
  m.kind = TrajectoryKind::sinusoidal;
  m.z0 = z0;
  m.epsilon = epsilon;
  m.drive_frequency = drive_frequency;
  m.drive_time = drive_time;
  m.ramp_time = ramp_time;
  m.validate();
  return m;
}

MirrorTrajectory MirrorTrajectory::receding(double A, double kappa) {
  MirrorTrajectory m;
  m.kind = TrajectoryKind::receding;
  m.z0 = 0.0;
  m.A = A;
  m.B = A;
  m.kappa = kappa;
  m.validate();
  return m;
}

void MirrorTrajectory::validate() const {
  switch (kind) {
    case TrajectoryKind::static_mirror:
      if (!(z0 > 0)) throw InvalidArgument("mirror separation z0 must be positive");
      break;
    case TrajectoryKind::sinusoidal: {
      if (!(z0 > 0)) throw InvalidArgument("mirror separation z0 must be positive");
      if (!(std::abs(epsilon) < 1)) throw InvalidArgument("drive amplitude must satisfy |epsilon| < 1");
      if (!(drive_frequency >= 0) || !(drive_time >= 0) || !(ramp_time >= 0)) {
        throw InvalidArgument("drive frequency, duration and ramp must be non-negative");
      }
      if (2 * ramp_time > drive_time) throw InvalidArgument("ramps longer than the drive");
      const double ramp_rate = ramp_time > 0 ? 0.5 * kPi / ramp_time : 0.0;
      if (z0 * std::abs(epsilon) * (drive_frequency + ramp_rate) >= 1) {
        throw InvalidArgument("mirror velocity reaches the speed of light");
      }
      break;
    }
    case TrajectoryKind::receding:
      if (!(A > 0) || !(kappa > 0)) throw InvalidArgument("receding mirror needs A, kappa > 0");
      if (!(kappa * A < 1)) throw InvalidArgument("receding mirror needs kappa A < 1 to stay sub-luminal");
      if (B != A) throw InvalidArgument("receding mirror needs B = A for continuity at t = 0");
      break;
  }
}

bool MirrorTrajectory::is_static() const {
  return kind == TrajectoryKind::static_mirror ||
         (kind == TrajectoryKind::sinusoidal && (epsilon == 0.0 || drive_time == 0.0));
}

std::vector<double> MirrorTrajectory::breakpoints() const {
  std::vector<double> b;
  if (kind == TrajectoryKind::sinusoidal && !is_static()) {
    b.push_back(0.0);
    if (ramp_time > 0) {
      b.push_back(ramp_time);
      b.push_back(drive_time - ramp_time);
    }
    b.push_back(drive_time);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  } else if (kind == TrajectoryKind::receding) {
    b.push_back(0.0);
  }
  return b;
}

Jet MirrorTrajectory::position(double t, Side side) const {
  const bool left = side == Side::left;
  switch (kind) {
    case TrajectoryKind::static_mirror:
      return {z0, 0.0, 0.0};
    case TrajectoryKind::sinusoidal: {
      if (t < 0 || (t == 0 && left) || t > drive_time || (t == drive_time && !left)) return {z0, 0.0, 0.0};
      Envelope env{1.0, 0.0, 0.0};
      if (ramp_time > 0) {
        if (t < ramp_time || (t == ramp_time && left)) {
          env = half_cosine_up(t, ramp_time);
        } else if (t > drive_time - ramp_time || (t == drive_time - ramp_time && !left)) {
          const Envelope e = half_cosine_up(drive_time - t, ramp_time);
          env = {e.w, -e.d1, e.d2};
        }
      }
      const double w = drive_frequency;
      const double s = std::sin(w * t), c = std::cos(w * t);
      const double scale = -z0 * epsilon;
      return {z0 + scale * env.w * s, scale * (env.d1 * s + env.w * w * c),
              scale * (env.d2 * s + 2 * env.d1 * w * c - env.w * w * w * s)};
    }
    case TrajectoryKind::receding: {
      if (t < 0 || (t == 0 && left)) return {0.0, 0.0, 0.0};
      const double e = std::exp(-2 * kappa * t);
      return {-t - A * e + B, -1 + 2 * kappa * A * e, -4 * kappa * kappa * A * e};
    }
  }
  return {z0, 0.0, 0.0};
}

RFunction::RFunction(double z0, std::vector<RNode> nodes, int order, bool linear)
    : z0_(z0), nodes_(std::move(nodes)), order_(order), linear_(linear) {
  if (order_ != 3 && order_ != 5) throw InvalidArgument("Hermite order must be 3 or 5");
}

double RFunction::max_u() const {
  if (linear_) return std::numeric_limits<double>::infinity();
  return nodes_.empty() ? z0_ : nodes_.back().u;
}

std::vector<double> RFunction::kinks() const {
  std::vector<double> k;
  for (const auto& n : nodes_) {
    if (n.kink()) k.push_back(n.u);
  }
  return k;
}

Jet RFunction::eval(double u, Side side) const {
  const Jet seed{u / z0_, 1.0 / z0_, 0.0};
  if (linear_ || nodes_.empty()) {
    if (!linear_ && u > z0_) throw OutOfGrid("R requested beyond the seed interval");
    return seed;
  }
  const double snap = 1e-12 * std::max(1.0, std::abs(u));
  if (u < nodes_.front().u - snap) return seed;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), u, [](double v, const RNode& n) { return v < n.u; });
  // it points past the last node with n.u <= u
  std::size_t i = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  for (std::size_t j : {i, i + 1}) {
    if (j < nodes_.size() && std::abs(nodes_[j].u - u) <= snap) {
      Jet jet = side == Side::left ? nodes_[j].left : nodes_[j].right;
      jet.value = nodes_[j].value;
      return jet;
    }
  }
  if (i + 1 >= nodes_.size()) {
    throw OutOfGrid("R requested at u = " + std::to_string(u) + " beyond the solved range " +
                    std::to_string(nodes_.back().u));
  }
  const RNode& a = nodes_[i];
  const RNode& b = nodes_[i + 1];
  Jet left = a.right, right = b.left;
  left.value = a.value;
  right.value = b.value;
  const double h = b.u - a.u;
  return numerics::hermite_segment(left, right, h, (u - a.u) / h, order_);
}

RFunction solve_moore(const MirrorTrajectory& traj, double T, const MooreOptions& opt) {
  traj.validate();
  if (traj.kind == TrajectoryKind::receding) throw InvalidArgument("solve_moore: needs a cavity trajectory");
  if (!(T > 0)) throw InvalidArgument("solve_moore: T must be positive");
  const double z0 = traj.z0;
  const double h = opt.grid_step > 0 ? opt.grid_step : z0 / 512.0;

  if (traj.is_static()) {
    RFunction R(z0, {}, opt.order, true);
    R.max_residual = 0.0;
    return R;
  }

  const double u_target = T + traj.position(T).value + 4 * h;
  const double z_max = z0 * (1 + std::abs(traj.epsilon));
  const double merge = kMergeTolerance * z0;

  struct Event {
    double t;
    int priority;  // breakpoints and kink images win over plain grid points
    bool operator>(const Event& o) const { return t > o.t; }
  };
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  const auto grid_count = static_cast<long>(std::ceil(u_target / h));
  for (long k = 0; k <= grid_count; ++k) events.push({static_cast<double>(k) * h, 0});
  for (double b : traj.breakpoints()) events.push({b, 1});

  RFunction R(z0, {}, opt.order, false);
  std::vector<RNode>& nodes = R.nodes_;

  auto image = [](const Jet& Rm, const Jet& z) {
    const double a = 1 + z.d1, b = 1 - z.d1;
    Jet out;
    out.value = Rm.value + 2.0;
    out.d1 = Rm.d1 * b / a;
    out.d2 = (Rm.d2 * b * b - Rm.d1 * z.d2 - out.d1 * z.d2) / (a * a);
    return out;
  };

  while (!events.empty()) {
    Event ev = events.top();
    events.pop();
    while (!events.empty() && events.top().t - ev.t <= merge) {
      if (events.top().priority > ev.priority) ev = events.top();
      events.pop();
    }
    const double t = ev.t;
    const Jet zl = traj.position(t, Side::left);
    const Jet zr = traj.position(t, Side::right);
    const double u_minus = t - zr.value;
    const Jet Rl = R.eval(u_minus, Side::left);
    const Jet Rr = R.eval(u_minus, Side::right);

    RNode node;
    node.u = t + zr.value;
    node.left = image(Rl, zl);
    node.right = image(Rr, zr);
    node.value = node.right.value;
    if (!nodes.empty() && !(node.u > nodes.back().u)) {
      throw NonMonotone("characteristic images are not increasing near t = " + std::to_string(t));
    }
    if (!(node.left.d1 > 0) || !(node.right.d1 > 0)) {
      throw NonMonotone("R is not increasing at u = " + std::to_string(node.u));
    }
    nodes.push_back(node);

    if (node.kink()) {
      // The derivative jump reappears where t - z(t) reaches this node.
      const double U = node.u;
      auto g = [&](double s) { return s - traj.position(s).value - U; };
      const double t_star = numerics::bisect(g, U, U + z_max + h);
      if (t_star <= u_target) events.push({t_star, 1});
    }
    if (node.u >= u_target) break;
  }

  if (opt.check_residual) {
    R.max_residual = moore_residual(R, traj, T, 0.5 * h);
    if (R.max_residual > opt.tol) {
      throw ResidualExceeded("Moore residual " + std::to_string(R.max_residual) + " exceeds " +
                             std::to_string(opt.tol));
    }
  }
  return R;
}

RFunction solve_moore(const MirrorTrajectory& traj, double T) { return solve_moore(traj, T, MooreOptions{}); }

double moore_residual(const RFunction& R, const MirrorTrajectory& traj, double t_max, double step) {
  if (R.linear()) {
    double worst = 0.0;
    const auto n = static_cast<long>(std::floor(t_max / step));
    for (long k = 0; k <= n; ++k) {
      const double z = traj.position(static_cast<double>(k) * step).value;
      worst = std::max(worst, std::abs(2.0 * z / R.z0() - 2.0));
    }
    return worst;
  }
  double worst = 0.0;
  const auto n = static_cast<long>(std::floor(t_max / step));
  for (long k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * step;
    const double z = traj.position(t).value;
    worst = std::max(worst, std::abs(R(t + z) - R(t - z) - 2.0));
  }
  return worst;
}

Complex cavity_mode(const RFunction& R, int n, double x, double t) {
  if (n < 1) throw InvalidArgument("mode index must be >= 1");
  if (x < 0) throw OutOfGrid("x must be inside the cavity");
  const double k = kPi * n;
  const Complex ep = std::polar(1.0, -k * R(t + x));
  const Complex em = std::polar(1.0, -k * R(t - x));
  return -(ep - em) / std::sqrt(4 * kPi * n);
}

Complex cavity_mode_dt(const RFunction& R, int n, double x, double t) {
  if (n < 1) throw InvalidArgument("mode index must be >= 1");
  if (x < 0) throw OutOfGrid("x must be inside the cavity");
  const double k = kPi * n;
  const Jet rp = R.eval(t + x), rm = R.eval(t - x);
  const Complex ep = std::polar(1.0, -k * rp.value);
  const Complex em = std::polar(1.0, -k * rm.value);
  return Complex(0, k) * (rp.d1 * ep - rm.d1 * em) / std::sqrt(4 * kPi * n);
}

Complex static_mode(double z0, int m, double x, double t) {
  const double w = kPi * m / z0;
  return Complex(0, 1) / std::sqrt(kPi * m) * std::sin(w * x) * std::polar(1.0, -w * t);
}

BogoliubovMatrices dce_bogoliubov(const RFunction& R, const MirrorTrajectory& traj, double T, int n_max,
                                  const QuadratureOptions& opt) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  const double z0 = R.z0();
  if (std::abs(traj.position(T).value - z0) > 1e-12 * z0 || traj.position(T).d1 != 0.0) {
    throw InvalidArgument("dce_bogoliubov: mirror must be at rest at z0 at the evaluation time");
  }

  std::vector<double> breaks;
  for (int p = 0; p <= n_max; ++p) breaks.push_back(z0 * p / n_max);
  for (double U : R.kinks()) {
    for (double x : {U - T, T - U}) {
      if (x > 0 && x < z0) breaks.push_back(x);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> clean{breaks.front()};
  for (double b : breaks) {
    if (b - clean.back() > 1e-12 * z0) clean.push_back(b);
  }
  if (clean.back() != z0) clean.back() = z0;

  const auto rule = numerics::composite_gauss(clean, numerics::gauss_legendre(opt.points_per_panel));
  const Eigen::Index q = rule.nodes.size();
  Eigen::VectorXd rp(q), rpd(q), rm(q), rmd(q);
  for (Eigen::Index i = 0; i < q; ++i) {
    const Jet a = R.eval(T + rule.nodes[i]);
    const Jet b = R.eval(T - rule.nodes[i]);
    rp[i] = a.value;
    rpd[i] = a.d1;
    rm[i] = b.value;
    rmd[i] = b.d1;
  }

  Eigen::MatrixXcd phi(n_max, q), dphi(n_max, q), psi_conj(n_max, q);
  Eigen::VectorXd omega(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double k = kPi * n;
    const double norm = 1.0 / std::sqrt(4 * kPi * n);
    omega[n - 1] = k / z0;
    for (Eigen::Index i = 0; i < q; ++i) {
      const Complex ep = std::polar(1.0, -k * rp[i]);
      const Complex em = std::polar(1.0, -k * rm[i]);
      phi(n - 1, i) = -(ep - em) * norm;
      dphi(n - 1, i) = Complex(0, k) * (rpd[i] * ep - rmd[i] * em) * norm;
      psi_conj(n - 1, i) = std::conj(static_mode(z0, n, rule.nodes[i], T));
    }
  }

  const Complex I(0, 1);
  const auto W = rule.weights.asDiagonal();
  const Eigen::MatrixXcd proj = W * psi_conj.transpose();  // q x m
  const auto om = omega.asDiagonal();

  BogoliubovMatrices out;
  out.T = T;
  out.alpha = I * (dphi * proj) + (phi * proj) * om;
  out.beta = (I * (dphi.conjugate() * proj) + (phi.conjugate() * proj) * om).conjugate();
  out.unitarity_residual =
      (out.alpha.cwiseAbs2().colwise().sum() - out.beta.cwiseAbs2().colwise().sum()).transpose().array() - 1.0;

  for (int m = 1; 2 * m <= n_max; ++m) {
    if (std::abs(out.unitarity_residual[m - 1]) > opt.unitarity_tol) {
      throw UnitarityLoss("mode " + std::to_string(m) + " unitarity residual " +
                          std::to_string(out.unitarity_residual[m - 1]) + "; increase n_max");
    }
  }
  return out;
}

double photon_number_out(const BogoliubovMatrices& mats, int m) {
  if (m < 1 || m > mats.beta.cols()) throw InvalidArgument("mode index out of range");
  return mats.beta.col(m - 1).squaredNorm();
}

bool rows_unitary(const BogoliubovMatrices& mats, double tol) {
  for (Eigen::Index m = 1; 2 * m <= mats.unitarity_residual.size(); ++m) {
    if (std::abs(mats.unitarity_residual[m - 1]) > tol) return false;
  }
  return true;
}

SingleModeDce single_mode_dce(double epsilon, double omega0, double t) {
  if (!(epsilon >= 0) || !(omega0 >= 0) || !(t >= 0)) throw InvalidArgument("single_mode_dce: arguments must be >= 0");
  // The amplifier's parameter is 2 eta t, so eta = eps omega0 / 2.
  const auto map = symplectic::dpa_evolution(0.5 * epsilon * omega0, t);
  const double s = std::sinh(epsilon * omega0 * t);
  return {s * s, map};
}

double reflected_ray(const MirrorTrajectory& traj, double u) {
  if (traj.kind != TrajectoryKind::receding) throw InvalidArgument("reflected_ray: needs a receding mirror");
  if (u <= 0) return u;
  const double A = traj.A, k = traj.kappa;
  auto g = [&](double t) { return 2 * t + A * std::expm1(-2 * k * t) - u; };
  const double t_r = numerics::bisect(g, 0.5 * u, u / (2 - 2 * k * A));
  return traj.B - A * std::exp(-2 * k * t_r);
}

namespace {

// dp/du = (1 + zdot) / (1 - zdot) at the reflection event of ray u > 0.
double reflected_slope(const MirrorTrajectory& traj, double u) {
  const double A = traj.A, k = traj.kappa;
  auto g = [&](double t) { return 2 * t + A * std::expm1(-2 * k * t) - u; };
  const double t_r = numerics::bisect(g, 0.5 * u, u / (2 - 2 * k * A));
  const double zdot = traj.position(t_r).d1;
  return (1 + zdot) / (1 - zdot);
}

}  // namespace

RecedingResult receding_mirror_spectrum(double A, double kappa, const RecedingOptions& opt) {
  const MirrorTrajectory traj = MirrorTrajectory::receding(A, kappa);
  const double Omega = opt.probe_over_kappa * kappa;

  // Place the taper where the instantaneous frequency has dropped to
  // taper_rate * kappa; the launch transient lies to its left.
  const double target = opt.taper_rate * kappa;
  if (!(Omega * reflected_slope(traj, 1e-9 / kappa) > target)) {
    throw InvalidArgument("receding_mirror_spectrum: probe frequency too low for the taper");
  }
  double hi = 1.0 / kappa;
  while (Omega * reflected_slope(traj, hi) > target) hi *= 2;
  const double u_c = numerics::bisect([&](double u) { return Omega * reflected_slope(traj, u) - target; },
                                      1e-9 / kappa, hi);

  const double width = opt.taper_width / kappa;
  const double t_left = u_c - 6 * width;
  const double t_right = u_c + opt.right_extent / kappa;
  const double f_max = t_left > 0 ? Omega * reflected_slope(traj, t_left) : Omega;
  std::size_t n = 1;
  if (opt.log2_samples > 0) {
    n <<= opt.log2_samples;
  } else {
    while (static_cast<double>(n) < (t_right - t_left) * 2.0 * f_max / kPi) n <<= 1;
  }
  const double dt = (t_right - t_left) / static_cast<double>(n);

  Eigen::VectorXcd samples(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double u = t_left + dt * static_cast<double>(i);
    samples[static_cast<Eigen::Index>(i)] = std::polar(1.0, -Omega * reflected_ray(traj, u));
  }

  horizon::WindowSpec window;
  window.kind = horizon::WindowKind::erf_taper;
  window.taper_center = u_c;
  window.taper_width = width;
  window.step_center = u_c + opt.step_offset / kappa;
  window.step_width = opt.step_width / kappa;
  window.step_value = std::polar(1.0, -Omega * traj.B);

  RecedingResult result;
  result.taper_center = u_c;
  result.spectrum = horizon::power_spectrum(samples, t_left, dt, window, kappa);
  result.fit = horizon::planck_fit_rate(result.spectrum, opt.band_lo * kappa, opt.band_hi * kappa);
  result.spectrum.fitted_temperature = result.fit.rate;
  result.spectrum.fit_residual = result.fit.residual;
  return result;
}

bool dce_threshold(double epsilon, double omega, double Q) {
  if (!(epsilon >= 0) || !(omega >= 0) || !(Q >= 0)) throw InvalidArgument("dce_threshold: arguments must be >= 0");
  return epsilon * omega * Q > 1.0;
}

}  // namespace vacuum::dce
