#include "vacuum/cli/scenarios.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "vacuum/constants.hpp"
#include "vacuum/dce.hpp"
#include "vacuum/errors.hpp"
#include "vacuum/horizon.hpp"
#include "vacuum/modeode.hpp"
#include "vacuum/squidsim.hpp"
#include "vacuum/symplectic.hpp"

namespace vacuum::cli {

namespace {

constexpr double kPi = std::numbers::pi;
const constants::PhysicalConstants& K = constants::kCodata2018;

double num(const Json& p, const char* key) { return p.at(key).get<double>(); }
long integer(const Json& p, const char* key) { return p.at(key).get<long>(); }

Check check(std::string name, bool pass, std::string detail) { return {std::move(name), pass, std::move(detail)}; }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::vector<double> linspace(double a, double b, long n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) v[i] = n == 1 ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

ScenarioResult run_paramp(const Json& p) {
  const double eta = num(p, "eta"), t_end = num(p, "t"), omega_s = num(p, "omega_s");
  ScenarioResult res;
  res.table.header = csv_columns(Kind::paramp);
  double worst_product = 0.0;
  for (double t : linspace(0.0, t_end, integer(p, "samples"))) {
    const auto dpa = symplectic::dpa_evolution(eta, t);
    const auto ndpa = symplectic::ndpa_evolution(eta, t);
    const auto var = symplectic::quadrature_variances(eta, t);
    worst_product = std::max(worst_product, std::abs(var.var_X1 * var.var_X2 - 1.0));
    res.table.rows.push_back({t, symplectic::mean_photon_number(dpa), symplectic::mean_photon_number(ndpa),
                              var.var_X1, var.var_X2, symplectic::entanglement_entropy(eta * t, omega_s)});
  }
  const auto dpa = symplectic::dpa_evolution(eta, t_end);
  const auto ndpa = symplectic::ndpa_evolution(eta, t_end);
  const double r = eta * t_end;
  const auto state = symplectic::two_mode_amplitudes(r, 1e-12, omega_s);
  double norm = state.truncation_error;
  for (double c : state.fock_amplitudes) norm += c * c;

  res.headline["N"] = symplectic::mean_photon_number(dpa);
  res.headline["N_signal"] = symplectic::mean_photon_number(ndpa);
  res.headline["N_idler"] = symplectic::mean_photon_number(ndpa);
  res.headline["squeezing_dB"] = symplectic::variance_to_db(symplectic::quadrature_variances(eta, t_end).var_X2);
  res.headline["entropy_nats"] = symplectic::entanglement_entropy(r, omega_s);
  res.headline["T_eff_K"] = r > 0 ? symplectic::invert_effective_temperature(r, omega_s) : 0.0;
  res.headline["fock_terms"] = state.fock_amplitudes.size();
  res.checks.push_back(check("symplectic_dpa", std::abs(dpa.scaled_residual()) <= 1e-9, sci(dpa.scaled_residual())));
  res.checks.push_back(check("uncertainty_product", worst_product <= 1e-12, sci(worst_product)));
  res.checks.push_back(check("fock_normalisation", std::abs(norm - 1.0) <= 1e-12, sci(norm - 1.0)));
  return res;
}

ScenarioResult run_quench(const Json& p) {
  const double w_in = num(p, "omega_in"), w_out = num(p, "omega_out"), ramp = num(p, "ramp_time");
  const std::string kind = p.at("profile").get<std::string>();
  modeode::FrequencyProfile profile = kind == "tanh_ramp" ? modeode::FrequencyProfile::tanh_ramp(w_in, w_out, ramp)
                                                          : modeode::FrequencyProfile::sudden_step(w_in, w_out, ramp);
  const double half = std::max(static_cast<double>(integer(p, "periods")) * 2 * kPi / std::min(w_in, w_out),
                               25.0 * profile.effective_width());
  modeode::ModeOptions opt;
  opt.tol = num(p, "tol");
  const auto traj = modeode::evolve_mode(profile, -half, half, num(p, "mass"), opt);
  const auto map = modeode::extract_bogoliubov(traj, w_out);
  double drift = 0.0;
  for (double n : traj.kg_norm_history) drift = std::max(drift, std::abs(n - 1.0));
  const double oracle = (w_out - w_in) * (w_out - w_in) / (4 * w_in * w_out);
  const double beta_sq = std::norm(map.beta());

  ScenarioResult res;
  res.table.header = csv_columns(Kind::quench);
  res.table.rows.push_back({w_in, w_out, profile.effective_width(), beta_sq, oracle, std::abs(map.alpha()), drift});
  res.headline["beta_sq"] = beta_sq;
  res.headline["N_out"] = symplectic::mean_photon_number(map);
  res.headline["sudden_oracle"] = oracle;
  res.headline["relative_to_sudden"] = oracle > 0 ? beta_sq / oracle - 1.0 : 0.0;
  res.headline["ramp_width_s"] = profile.effective_width();
  res.headline["steps"] = traj.times.size();
  res.checks.push_back(check("symplectic", std::abs(map.scaled_residual()) <= 1e-6, sci(map.scaled_residual())));
  const double limit = 10.0 * opt.tol * static_cast<double>(traj.times.size());
  res.checks.push_back(check("kg_norm", drift <= limit, sci(drift)));
  return res;
}

ScenarioResult run_swing(const Json& p) {
  const double th0 = num(p, "theta0"), L0 = num(p, "L0"), m = num(p, "m"), l = num(p, "l");
  const double eps = num(p, "epsilon"), t_end = num(p, "t_end");
  const auto times = linspace(0.0, t_end, integer(p, "samples"));
  const auto ode = modeode::modulated_pendulum(th0, L0, m, l, eps, times);
  ScenarioResult res;
  res.table.header = csv_columns(Kind::swing);
  for (std::size_t i = 0; i < times.size(); ++i) {
    res.table.rows.push_back({times[i], modeode::parametric_swing(th0, L0, m, l, eps, times[i]), ode[i].theta});
  }
  const double ws = std::sqrt(constants::kStandardGravity / l);
  res.headline["omega_s"] = ws;
  res.headline["theta_end_formula"] = res.table.rows.back()[1];
  res.headline["theta_end_ode"] = res.table.rows.back()[2];

  // Envelope of the amplified term at the turning points t = 2 pi k / ws.
  if (th0 != 0.0 && eps > 0.0) {
    std::vector<double> tk, amp, amp_ode;
    std::vector<double> strobe;
    for (double t = 0.0; t <= t_end; t += 2 * kPi / ws) strobe.push_back(t);
    const auto ode_strobe = modeode::modulated_pendulum(th0, L0, m, l, eps, strobe);
    for (std::size_t k = 0; k < strobe.size(); ++k) {
      tk.push_back(strobe[k]);
      amp.push_back(std::abs(modeode::parametric_swing(th0, L0, m, l, eps, strobe[k])));
      amp_ode.push_back(std::abs(ode_strobe[k].theta));
    }
    if (tk.size() >= 2) {
      const auto fit = modeode::fit_log_linear(tk, amp);
      const auto fit_ode = modeode::fit_log_linear(tk, amp_ode);
      res.headline["envelope_rate_formula"] = fit.rate;
      res.headline["envelope_rate_ode"] = fit_ode.rate;
      res.checks.push_back(check("envelope_growth", std::abs(fit.rate / (0.5 * eps) - 1.0) < 0.01,
                                 sci(fit.rate / (0.5 * eps) - 1.0)));
    }
  }
  return res;
}

ScenarioResult run_unruh(const Json& p) {
  const auto params = horizon::AccelerationParams::from_acceleration(num(p, "accel"));
  const double alpha = params.accel_param;
  horizon::ChirpOptions opt;
  opt.probe_over_alpha = num(p, "probe");
  opt.log2_samples = static_cast<int>(integer(p, "log2_samples"));
  auto spec = horizon::unruh_spectrum(params, opt);
  const double lo = num(p, "band_lo") * alpha, hi = num(p, "band_hi") * alpha;
  const auto fit = horizon::planck_fit_1d(spec, lo, hi);
  const double T_U = horizon::unruh_temperature(params);

  ScenarioResult res;
  res.table.header = csv_columns(Kind::unruh);
  double worst_db = 0.0, worst_30 = 0.0;
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    const double w = spec.frequencies[i];
    if (w <= 0 || w > 4 * alpha) continue;
    const double model = 2 * kPi / (w * alpha) / std::expm1(2 * kPi * w / alpha);
    const double p_neg = spec.at(-w), p_pos = spec.power[i];
    res.table.rows.push_back({w, p_pos, p_neg, model});
    if (w >= lo && w <= hi) {
      worst_db = std::max(worst_db, std::abs(p_neg / p_pos / std::exp(-2 * kPi * w / alpha) - 1.0));
      worst_30 = std::max(worst_30, std::abs(p_neg / model - 1.0));
    }
  }
  res.headline["alpha"] = alpha;
  res.headline["T_unruh_K"] = T_U;
  res.headline["T_fit_K"] = fit.temperature;
  res.headline["T_fit_over_T_unruh"] = fit.temperature / T_U;
  res.headline["fit_residual"] = fit.residual;
  res.headline["max_detailed_balance_dev"] = worst_db;
  res.headline["max_planck_form_dev"] = worst_30;
  res.headline["samples"] = spec.size();
  res.headline["window"] = spec.window.describe();
  res.checks.push_back(check("detailed_balance", worst_db < 0.01, sci(worst_db)));
  res.checks.push_back(check("planck_form", worst_30 < 0.02, sci(worst_30)));
  res.checks.push_back(check("planck_fit", std::abs(fit.temperature / T_U - 1.0) < 0.01, sci(fit.temperature / T_U - 1.0)));
  res.checks.push_back(check("window_span", !spec.insufficient_window, spec.insufficient_window ? "short" : "ok"));
  return res;
}

ScenarioResult run_blackhole(const Json& p) {
  const horizon::BlackHole bh(num(p, "mass"));
  const double rs = horizon::schwarzschild_radius(bh);
  const double T_H = horizon::hawking_temperature(bh);
  const long ppd = integer(p, "points_per_decade");
  ScenarioResult res;
  res.table.header = csv_columns(Kind::blackhole);
  for (long i = -6 * ppd; i <= 3 * ppd; ++i) {
    const double x = 1.0 + std::pow(10.0, static_cast<double>(i) / static_cast<double>(ppd));
    const double r = x * rs;
    res.table.rows.push_back({x, horizon::static_acceleration(bh, r), horizon::local_temperature(bh, r),
                              horizon::pg_freefall_velocity(bh, r)});
  }
  const auto g = horizon::surface_gravity(bh);
  res.headline["r_s_m"] = rs;
  res.headline["kappa"] = g.kappa;
  res.headline["gamma"] = g.gamma;
  res.headline["T_H_K"] = T_H;
  res.headline["T_H_times_M"] = T_H * bh.mass;
  res.headline["entropy_J_per_K"] = horizon::bh_entropy(bh);
  res.headline["power_1d_W"] = horizon::power_1d(T_H);

  const double r_near = (1.0 + 1e-6) * rs;
  const double unruh_form = K.hbar * (horizon::static_acceleration(bh, r_near) / K.c) / (2 * kPi * K.k_B);
  const double near_ratio = horizon::local_temperature(bh, r_near) / unruh_form;
  const double far = horizon::local_temperature(bh, 1e6 * rs) / T_H - 1.0;
  const double dM = 1e-4 * bh.mass;
  const double dS = (horizon::bh_entropy(horizon::BlackHole(bh.mass + dM)) -
                     horizon::bh_entropy(horizon::BlackHole(bh.mass - dM))) / (2 * dM);
  const double first_law = T_H * dS / (K.c * K.c) - 1.0;
  res.headline["near_horizon_ratio"] = near_ratio;
  res.checks.push_back(check("near_horizon_unruh", std::abs(near_ratio - 1.0) < 1e-3, sci(near_ratio - 1.0)));
  res.checks.push_back(check("far_field_limit", std::abs(far) < 1e-6, sci(far)));
  res.checks.push_back(check("first_law", std::abs(first_law) < 1e-6, sci(first_law)));
  return res;
}

ScenarioResult run_dce_cavity(const Json& p) {
  // Natural units: lengths in metres, times multiplied by c.
  const double z0 = num(p, "z0");
  const double w1 = kPi / z0;
  const double wd = p.contains("drive_frequency") ? num(p, "drive_frequency") / K.c : 2 * w1;
  const double eps = num(p, "epsilon");
  const double T = static_cast<double>(integer(p, "drive_cycles")) * kPi / wd;
  const double ramp = num(p, "ramp_periods") * 2 * kPi / wd;
  const bool is_static = p.at("trajectory").get<std::string>() == "static";
  const auto traj = is_static ? dce::MirrorTrajectory::static_mirror(z0)
                              : dce::MirrorTrajectory::sinusoidal(z0, eps, wd, T, ramp);
  dce::MooreOptions mo;
  mo.grid_step = z0 / static_cast<double>(integer(p, "grid_divisions"));
  const auto R = dce::solve_moore(traj, T, mo);
  const int n_max = static_cast<int>(integer(p, "n_max"));
  const auto mats = dce::dce_bogoliubov(R, traj, T, n_max);

  ScenarioResult res;
  res.table.header = csv_columns(Kind::dce_cavity);
  double total = 0.0, worst_unitarity = 0.0, worst_n = 0.0;
  for (int m = 1; m <= n_max; ++m) {
    const double N = dce::photon_number_out(mats, m);
    res.table.rows.push_back({static_cast<double>(m), N, mats.unitarity_residual[m - 1]});
    worst_n = std::max(worst_n, N);
    if (2 * m <= n_max) {
      total += N;
      worst_unitarity = std::max(worst_unitarity, std::abs(mats.unitarity_residual[m - 1]));
    }
  }
  const double N1 = dce::photon_number_out(mats, 1);
  const double short_time = eps * w1 * T;
  res.headline["T_s"] = T / K.c;
  res.headline["omega_1"] = w1 * K.c;
  res.headline["N_1"] = N1;
  res.headline["N_retained"] = total;
  res.headline["moore_residual"] = R.max_residual;
  res.headline["N1_over_short_time_law"] = short_time > 0 ? N1 / (short_time * short_time) : 0.0;
  res.headline["max_unitarity_residual"] = worst_unitarity;
  res.checks.push_back(check("unitarity", worst_unitarity <= 1e-3, sci(worst_unitarity)));
  res.checks.push_back(check("moore_residual", R.max_residual <= 1e-8, sci(R.max_residual)));
  if (is_static || eps == 0.0) res.checks.push_back(check("static_no_photons", worst_n < 1e-10, sci(worst_n)));
  return res;
}

ScenarioResult run_dce_receding(const Json& p) {
  const double kappa = num(p, "kappa");
  const double A = p.contains("A") ? num(p, "A") : 0.5 / kappa;
  dce::RecedingOptions opt;
  opt.probe_over_kappa = num(p, "probe_over_kappa");
  opt.band_lo = num(p, "band_lo");
  opt.band_hi = num(p, "band_hi");
  const auto r = dce::receding_mirror_spectrum(A, kappa, opt);
  const double expected = kappa / (2 * kPi);

  ScenarioResult res;
  res.table.header = csv_columns(Kind::dce_receding);
  double worst_db = 0.0;
  const double amp = std::exp(r.fit.log_amplitude);
  for (Eigen::Index i = 0; i < r.spectrum.size(); ++i) {
    const double w = r.spectrum.frequencies[i];
    if (w <= 0 || w > 4 * kappa) continue;
    const double p_neg = r.spectrum.at(-w), p_pos = r.spectrum.power[i];
    res.table.rows.push_back({w, p_pos, p_neg, amp / (w * std::expm1(w / r.fit.rate))});
    if (w >= opt.band_lo * kappa && w <= opt.band_hi * kappa) {
      worst_db = std::max(worst_db, std::abs(p_neg / p_pos / std::exp(-w / r.fit.rate) - 1.0));
    }
  }
  res.headline["kappa"] = kappa;
  res.headline["A"] = A;
  res.headline["T_eff_natural"] = r.fit.rate;
  res.headline["T_eff_expected"] = expected;
  res.headline["T_eff_ratio"] = r.fit.rate / expected;
  res.headline["T_eff_K"] = K.hbar * r.fit.rate / K.k_B;
  res.headline["fit_residual"] = r.fit.residual;
  res.headline["max_detailed_balance_dev"] = worst_db;
  res.headline["samples"] = r.spectrum.size();
  res.checks.push_back(check("temperature", std::abs(r.fit.rate / expected - 1.0) < 0.02, sci(r.fit.rate / expected - 1.0)));
  res.checks.push_back(check("detailed_balance", worst_db < 0.02, sci(worst_db)));
  return res;
}

ScenarioResult run_squid(const Json& p) {
  squid::SquidParams sp{num(p, "I_c"), num(p, "C_J"), num(p, "C_0"), num(p, "dx"), num(p, "L_0")};
  sp.validate();
  squid::FluxPulse flat;
  const double c0 = squid::speed_of_light_profile(sp, flat, 0.0);
  squid::FluxPulse pulse{squid::PulseShape::tanh_step, num(p, "amplitude") * K.flux_quantum,
                         num(p, "velocity_fraction") * c0, num(p, "steepness")};
  const auto rep = squid::find_horizon(sp, pulse);
  const double x_h = *rep.position;

  ScenarioResult res;
  res.table.header = csv_columns(Kind::squid_horizon);
  const double span = num(p, "span") / pulse.steepness;
  int sign_changes = 0;
  double prev = 0.0;
  for (double x : linspace(-span, span, integer(p, "samples"))) {
    const auto g = squid::effective_metric(sp, pulse, x);
    if (prev != 0.0 && g.g_tt != 0.0 && (g.g_tt > 0) != (prev > 0)) ++sign_changes;
    if (g.g_tt != 0.0) prev = g.g_tt;
    res.table.rows.push_back({x, squid::speed_of_light_profile(sp, pulse, x), g.g_tt});
  }
  const double root_err = std::abs(squid::speed_of_light_profile(sp, pulse, x_h) - pulse.velocity) / pulse.velocity;
  const double grad_dev = std::abs(rep.gradient_fd / rep.gradient - 1.0);
  res.headline["c_s0"] = c0;
  res.headline["velocity"] = pulse.velocity;
  res.headline["x_h_m"] = x_h;
  res.headline["gradient"] = rep.gradient;
  res.headline["gradient_fd"] = rep.gradient_fd;
  res.headline["T_H_K"] = rep.temperature;
  res.headline["T_H_fd_K"] = rep.temperature_fd;
  res.headline["power_W"] = rep.power;
  res.headline["edge_frequency"] = rep.edge_frequency;
  res.headline["plasma_limit"] = rep.plasma_limit;
  res.checks.push_back(check("root_accuracy", root_err < 1e-10, sci(root_err)));
  res.checks.push_back(check("gradient_agreement", grad_dev < 1e-3, sci(grad_dev)));
  res.checks.push_back(check("plasma_limit", rep.within_plasma_limit,
                             sci(rep.edge_frequency) + " vs " + sci(rep.plasma_limit)));
  res.checks.push_back(check("single_sign_change", sign_changes == 1, std::to_string(sign_changes)));
  return res;
}

}  // namespace

const std::vector<std::string>& csv_columns(Kind kind) {
  static const std::map<Kind, std::vector<std::string>> cols{
      {Kind::paramp, {"t", "N_dpa", "N_ndpa", "var_X1", "var_X2", "entropy"}},
      {Kind::quench, {"omega_in", "omega_out", "ramp_time", "beta_sq", "sudden_oracle", "alpha_abs", "kg_norm_drift"}},
      {Kind::swing, {"t", "theta_formula", "theta_ode"}},
      {Kind::unruh, {"omega", "P_pos", "P_neg", "planck_model"}},
      {Kind::blackhole, {"r_over_rs", "accel", "T_local", "u_pg"}},
      {Kind::dce_cavity, {"m", "N_m", "unitarity"}},
      {Kind::dce_receding, {"omega", "P_pos", "P_neg", "planck_fit"}},
      {Kind::squid_horizon, {"x", "c_s", "g_tt"}},
  };
  return cols.at(kind);
}

ScenarioResult execute(const Scenario& s) {
  const Json& p = s.parameters;
  switch (s.kind) {
    case Kind::paramp: return run_paramp(p);
    case Kind::quench: return run_quench(p);
    case Kind::swing: return run_swing(p);
    case Kind::unruh: return run_unruh(p);
    case Kind::blackhole: return run_blackhole(p);
    case Kind::dce_cavity: return run_dce_cavity(p);
    case Kind::dce_receding: return run_dce_receding(p);
    case Kind::squid_horizon: return run_squid(p);
  }
  throw InvalidArgument("unhandled scenario kind");
}

}  // namespace vacuum::cli
