#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "vacuum/horizon.hpp"
#include "vacuum/numerics/hermite.hpp"
#include "vacuum/symplectic.hpp"

// One-dimensional cavity [0, z(t)] with a moving mirror at z(t), in units
// with c = 1. Times and lengths share one unit; frequencies are its inverse.
namespace vacuum::dce {

using Complex = std::complex<double>;
using numerics::Jet;

enum class TrajectoryKind { static_mirror, sinusoidal, receding };

// Which one-sided limit to take at a point where derivatives jump.
enum class Side { left, right };

struct MirrorTrajectory {
  TrajectoryKind kind = TrajectoryKind::static_mirror;
  double z0 = 1.0;
  // sinusoidal: z = z0 [1 - eps w(t) sin(drive_frequency t)] on [0, drive_time]
  // with envelope w rising and falling over ramp_time by half-cosines
  // (ramp_time = 0 switches the drive on and off abruptly).
  double epsilon = 0.0;
  double drive_frequency = 0.0;
  double drive_time = 0.0;
  double ramp_time = 0.0;
  // receding: z = -t - A e^{-2 kappa t} + B for t > 0, z = 0 before.
  double A = 0.0;
  double B = 0.0;
  double kappa = 0.0;

  static MirrorTrajectory static_mirror(double z0);
  static MirrorTrajectory sinusoidal(double z0, double epsilon, double drive_frequency, double drive_time,
                                     double ramp_time = 0.0);
  static MirrorTrajectory receding(double A, double kappa);

  // z, dz/dt, d2z/dt2 at t.
  Jet position(double t, Side side = Side::right) const;
  // Times where some derivative of z jumps.
  std::vector<double> breakpoints() const;
  // True when z(t) = z0 for all t.
  bool is_static() const;
  void validate() const;
};

struct RNode {
  double u;
  double value;
  Jet left;   // value, R', R'' approached from below
  Jet right;  // approached from above
  bool kink() const { return left.d1 != right.d1 || left.d2 != right.d2; }
};

struct MooreOptions;
class RFunction;
RFunction solve_moore(const MirrorTrajectory& traj, double T, const MooreOptions& opt);

// Solution of R(t + z) - R(t - z) = 2. Below `seed_end` R is the static
// solution u / z0; above it R is a Hermite interpolant through the nodes.
class RFunction {
 public:
  RFunction() = default;
  RFunction(double z0, std::vector<RNode> nodes, int order, bool linear);

  Jet eval(double u, Side side = Side::right) const;
  double operator()(double u) const { return eval(u).value; }

  double z0() const { return z0_; }
  double seed_end() const { return z0_; }
  double max_u() const;
  int order() const { return order_; }
  bool linear() const { return linear_; }
  const std::vector<RNode>& nodes() const { return nodes_; }
  // u-positions of nodes carrying a derivative jump.
  std::vector<double> kinks() const;

  double max_residual = 0.0;  // filled in by solve_moore

 private:
  friend RFunction solve_moore(const MirrorTrajectory& traj, double T, const MooreOptions& opt);

  double z0_ = 1.0;
  std::vector<RNode> nodes_;
  int order_ = 5;
  bool linear_ = false;
};

struct MooreOptions {
  double grid_step = 0.0;  // 0: z0 / 512
  double tol = 1e-8;
  int order = 5;           // Hermite order, 3 or 5
  bool check_residual = true;
};

// Marches R(t + z(t)) := R(t - z(t)) + 2 up to u = T + z(T) (plus margin).
RFunction solve_moore(const MirrorTrajectory& traj, double T);

// Largest |R(t + z) - R(t - z) - 2| for t on a grid of spacing `step` in [0, t_max].
double moore_residual(const RFunction& R, const MirrorTrajectory& traj, double t_max, double step);

// phi_n(x, t) = -(4 pi n)^{-1/2} [e^{-i pi n R(t+x)} - e^{-i pi n R(t-x)}]; the
// overall sign makes it coincide with the static mode at t = 0.
Complex cavity_mode(const RFunction& R, int n, double x, double t);
Complex cavity_mode_dt(const RFunction& R, int n, double x, double t);

// i (pi m)^{-1/2} sin(omega_m x) e^{-i omega_m t}, omega_m = pi m / z0.
Complex static_mode(double z0, int m, double x, double t);

struct BogoliubovMatrices {
  Eigen::MatrixXcd alpha;  // alpha(n-1, m-1)
  Eigen::MatrixXcd beta;
  double T = 0.0;
  Eigen::VectorXd unitarity_residual;  // sum_n (|alpha_nm|^2 - |beta_nm|^2) - 1 per m
};

struct QuadratureOptions {
  int points_per_panel = 16;
  double unitarity_tol = 1e-3;
};

BogoliubovMatrices dce_bogoliubov(const RFunction& R, const MirrorTrajectory& traj, double T, int n_max,
                                  const QuadratureOptions& opt = {});

double photon_number_out(const BogoliubovMatrices& mats, int m);

// |unitarity residual| <= tol for every m <= n_max / 2.
bool rows_unitary(const BogoliubovMatrices& mats, double tol);

struct SingleModeDce {
  double photons;
  symplectic::Bogoliubov map;
};

// sinh^2(eps omega0 t) with the equivalent degenerate-amplifier map.
SingleModeDce single_mode_dce(double epsilon, double omega0, double t);

struct RecedingOptions {
  double probe_over_kappa = 1e5;
  double taper_rate = 150.0;  // taper sits where the instantaneous frequency is this many kappa
  double taper_width = 0.5;   // 1 / kappa
  double right_extent = 45.0;
  double step_offset = 6.0;
  double step_width = 0.5;
  int log2_samples = 0;
  double band_lo = 0.5;  // fit band in units of kappa
  double band_hi = 3.0;
};

// Mirror image of the ray u: p(u) = t_r + z(t_r) where t_r - z(t_r) = u.
double reflected_ray(const MirrorTrajectory& traj, double u);

struct RecedingResult {
  horizon::SpectrumSeries spectrum;
  horizon::PlanckFit fit;  // fit.rate is T_eff in natural units
  double taper_center = 0.0;
};

// Reflected monochromatic wave exp(-i Omega p(u)) off the receding mirror,
// transformed and fitted to a 1D Planck law.
RecedingResult receding_mirror_spectrum(double A, double kappa, const RecedingOptions& opt = {});

bool dce_threshold(double epsilon, double omega, double Q);

}  // namespace vacuum::dce
