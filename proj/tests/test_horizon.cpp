#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "vacuum/errors.hpp"
#include "vacuum/horizon.hpp"

using namespace vacuum;
using namespace vacuum::horizon;
constexpr double kPi = std::numbers::pi;
const auto& K = constants::kCodata2018;

TEST_CASE("Rindler trajectory") {
  const auto p = AccelerationParams::from_acceleration(9.80665);
  CHECK(p.accel_param == doctest::Approx(9.80665 / K.c));
  CHECK(p.vertex_distance == doctest::Approx(K.c * K.c / 9.80665));
  const auto o = rindler_to_minkowski(0.0, p);
  CHECK(o.ct == 0.0);
  CHECK(o.x == doctest::Approx(p.vertex_distance));
  // Hyperbola x^2 - (ct)^2 = xi^2; velocity -> c.
  const auto q = rindler_to_minkowski(2.0 / p.accel_param, p);
  CHECK((q.x - q.ct) * (q.x + q.ct) == doctest::Approx(p.vertex_distance * p.vertex_distance).epsilon(1e-6));
  const double h = 1e-3 / p.accel_param;
  const auto a = rindler_to_minkowski(10.0 / p.accel_param, p), b = rindler_to_minkowski(10.0 / p.accel_param + h, p);
  CHECK((b.ct - a.ct) / (b.x - a.x) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(unruh_temperature(AccelerationParams::from_acceleration(9.8)) == doctest::Approx(3.97e-20).epsilon(2e-3));
}

TEST_CASE("chirp is monochromatic for small alpha") {
  const auto p = AccelerationParams::from_rate(1e-6);
  Eigen::VectorXd tau = Eigen::VectorXd::LinSpaced(11, -1.0, 1.0);
  const double Omega = 2.0;
  const auto w = chirped_waveform(Omega, p, tau);
  for (Eigen::Index i = 0; i < tau.size(); ++i) {
    const auto expected = std::exp(std::complex<double>(0, Omega / 1e-6 - Omega * tau[i]));
    CHECK(std::abs(w[i] - expected) < 1e-5);
  }
}

TEST_CASE("power spectrum of a pure tone peaks at +omega0") {
  const int n = 4096;
  const double dt = 0.05, w0 = 3.0;
  Eigen::VectorXcd s(n);
  for (int i = 0; i < n; ++i) s[i] = std::exp(std::complex<double>(0, -w0 * (i - n / 2) * dt));
  WindowSpec win;
  win.kind = WindowKind::hann;
  const auto spec = power_spectrum(s, -n / 2 * dt, dt, win, 1.0);
  Eigen::Index peak;
  spec.power.maxCoeff(&peak);
  CHECK(spec.frequencies[peak] == doctest::Approx(w0).epsilon(0.01));
  CHECK(spec.at(-w0) < 1e-6 * spec.power[peak]);
  const auto short_spec = power_spectrum(s.head(64), 0.0, dt, win, 1.0);
  CHECK(short_spec.insufficient_window);
  CHECK_FALSE(spec.insufficient_window);
}

TEST_CASE("Planck fit recovers synthetic data") {
  SpectrumSeries s;
  const int n = 401;
  s.frequencies = Eigen::VectorXd::LinSpaced(n, -20.0, 20.0);
  s.power.resize(n);
  const double rate = 1.7;
  for (int i = 0; i < n; ++i) {
    const double w = std::abs(s.frequencies[i]);
    s.power[i] = w == 0 ? 0.0 : 3.0 / (w * std::expm1(w / rate));
  }
  const auto fit = planck_fit_rate(s, 0.5, 6.0);
  CHECK(fit.rate == doctest::Approx(rate).epsilon(1e-3));
  CHECK(fit.log_amplitude == doctest::Approx(std::log(3.0)).epsilon(1e-6));
}

TEST_CASE("Unruh spectrum against the closed form") {
  const auto p = AccelerationParams::from_rate(2.0);
  auto s = unruh_spectrum(p);
  for (double x : {0.5, 1.0, 2.0}) {
    const double w = x * 2.0;
    const double closed = 2 * kPi / (w * 2.0) / std::expm1(2 * kPi * w / 2.0);
    const auto i = s.index_of(-w);
    const double wi = -s.frequencies[i];
    CHECK(s.power[i] == doctest::Approx(2 * kPi / (wi * 2.0) / std::expm1(2 * kPi * wi / 2.0)).epsilon(0.01));
    CHECK(closed > 0);
  }
  const auto fit = planck_fit_1d(s, 1.0, 6.0);
  REQUIRE(s.fitted_temperature.has_value());
  CHECK(fit.temperature == doctest::Approx(unruh_temperature(p)).epsilon(0.01));
}

TEST_CASE("detailed balance") {
  const double T = 0.1, w = K.k_B * T / K.hbar;
  CHECK(detailed_balance_ratio(w, T) == doctest::Approx(std::exp(-1.0)));
  CHECK(detailed_balance_ratio(w, 1e12) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("black hole") {
  const BlackHole sun(1.989e30);
  const double rs = schwarzschild_radius(sun);
  CHECK(rs == doctest::Approx(2.954e3).epsilon(1e-3));
  CHECK(hawking_temperature(sun) == doctest::Approx(6.17e-8).epsilon(2e-3));
  const auto mp = constants::planck_scales().mass_kg;
  CHECK(schwarzschild_radius(BlackHole(mp)) == doctest::Approx(2 * constants::planck_length()).epsilon(1e-12));
  // gamma in the Unruh formula gives T_H.
  const auto g = surface_gravity(sun);
  CHECK(unruh_temperature(AccelerationParams::from_rate(g.gamma)) == doctest::Approx(hawking_temperature(sun)).epsilon(1e-14));
  for (double d : {1e-1, 1e-3, 1e-6}) {
    const double r = rs * (1 + d);
    CHECK(redshift_factor(sun, r) * static_acceleration(sun, r) == doctest::Approx(g.kappa).epsilon(3 * d));
  }
  CHECK(static_acceleration(sun, 1e6 * rs) == doctest::Approx(K.G * sun.mass / std::pow(1e6 * rs, 2)).epsilon(1e-5));
  CHECK(std::abs(local_temperature(sun, 1e6 * rs) / hawking_temperature(sun) - 1) < 1e-6);
  CHECK_THROWS_AS(static_acceleration(sun, rs), InsideHorizon);
  CHECK_THROWS_AS(local_temperature(sun, 0.5 * rs), InsideHorizon);
  CHECK(pg_freefall_velocity(sun, rs) == doctest::Approx(K.c));
  CHECK(pg_freefall_velocity(sun, 4 * rs) == doctest::Approx(K.c / 2));
  CHECK(pg_freefall_velocity(sun, 1e12 * rs) < 1e-5 * K.c);
  CHECK(bh_area(sun) == doctest::Approx(4 * kPi * rs * rs));
  CHECK(power_1d(0.0) == 0.0);
  CHECK(power_1d(2.0) == doctest::Approx(4 * power_1d(1.0)));
  CHECK_THROWS_AS(BlackHole(-1.0), InvalidArgument);
}
