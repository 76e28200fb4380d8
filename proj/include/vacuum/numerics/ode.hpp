#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "vacuum/errors.hpp"

namespace vacuum::numerics {

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double initial_step = 0.0;  // 0 picks a step from the problem scale
  double min_step = 0.0;      // 0 means |t1 - t0| * 1e-14
  long max_steps = 50'000'000;
};

struct StepStats {
  long accepted = 0;
  long rejected = 0;
};

// Dormand-Prince 5(4) with FSAL and the usual I-controller. `State` is any
// fixed or dynamic Eigen column vector, real or complex. Integration may run
// backwards (t1 < t0). `on_step(t, y)` is invoked after every accepted step.
template <typename State, typename Rhs, typename OnStep>
StepStats integrate_dopri5(Rhs&& rhs, double t0, double t1, State& y, const AdaptiveOptions& opt,
                           OnStep&& on_step) {
  using std::abs;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  StepStats stats;
  const double span = t1 - t0;
  if (span == 0.0) return stats;
  const double dir = span > 0 ? 1.0 : -1.0;
  const double min_step = opt.min_step > 0 ? opt.min_step : std::abs(span) * 1e-14;

  State k1 = rhs(t0, y), k2, k3, k4, k5, k6, k7, y_new, err;
  double h = opt.initial_step > 0 ? opt.initial_step : std::abs(span) * 1e-3;
  double t = t0;

  while (dir * (t1 - t) > 0) {
    if (stats.accepted + stats.rejected > opt.max_steps) {
      throw StepSizeUnderflow("dopri5: step budget exhausted");
    }
    bool last = false;
    if (h >= std::abs(t1 - t)) {
      h = std::abs(t1 - t);
      last = true;
    }
    const double hs = dir * h;
    k2 = rhs(t + c2 * hs, (y + hs * a21 * k1).eval());
    k3 = rhs(t + c3 * hs, (y + hs * (a31 * k1 + a32 * k2)).eval());
    k4 = rhs(t + c4 * hs, (y + hs * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
    k5 = rhs(t + c5 * hs, (y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
    k6 = rhs(t + hs, (y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval());
    y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double t_new = last ? t1 : t + hs;
    k7 = rhs(t_new, y_new);
    err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err_norm = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double scale = opt.abs_tol + opt.rel_tol * std::max(abs(y[i]), abs(y_new[i]));
      err_norm = std::max(err_norm, abs(err[i]) / scale);
    }

    if (err_norm <= 1.0) {
      t = t_new;
      y = y_new;
      k1 = k7;
      ++stats.accepted;
      on_step(t, static_cast<const State&>(y));
      const double grow = err_norm == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err_norm, -0.2));
      h *= grow;
    } else {
      ++stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
      if (h < min_step) {
        throw StepSizeUnderflow("dopri5: step size fell below " + std::to_string(min_step) +
                                " at t = " + std::to_string(t));
      }
    }
  }
  return stats;
}

template <typename State, typename Rhs>
StepStats integrate_dopri5(Rhs&& rhs, double t0, double t1, State& y, const AdaptiveOptions& opt) {
  return integrate_dopri5(std::forward<Rhs>(rhs), t0, t1, y, opt, [](double, const State&) {});
}

}  // namespace vacuum::numerics
