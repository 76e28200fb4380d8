#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "vacuum/errors.hpp"

namespace vacuum::numerics {

// Bisection on a sign-changing bracket. Stops when the bracket has shrunk to
// `x_tol` or to one ULP, whichever comes first.
template <typename Function>
double bisect(Function&& f, double lower, double upper, double x_tol = 0.0) {
  double f_lower = f(lower);
  double f_upper = f(upper);
  if (f_lower == 0.0) return lower;
  if (f_upper == 0.0) return upper;
  if ((f_lower > 0) == (f_upper > 0)) {
    throw InvalidArgument("bisect: bracket does not change sign");
  }
  for (;;) {
    const double middle = 0.5 * (lower + upper);
    if (middle == lower || middle == upper || std::abs(upper - lower) <= x_tol) return middle;
    const double f_middle = f(middle);
    if (f_middle == 0.0) return middle;
    if ((f_middle > 0) == (f_upper > 0)) {
      upper = middle;
      f_upper = f_middle;
    } else {
      lower = middle;
      f_lower = f_middle;
    }
  }
}

struct Minimum {
  double x;
  double value;
  int iterations;
};

// Brent's parabolic/golden-section minimiser on [a, b].
template <typename Function>
Minimum brent_minimize(Function&& f, double a, double b, double x_tol = 1e-12, int max_iter = 500) {
  constexpr double golden = 0.3819660112501051;
  double x = a + golden * (b - a);
  double w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol1 = x_tol * std::abs(x) + 1e-300;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) break;
    bool golden_step = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = x < m ? tol1 : -tol1;
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x < m ? b : a) - x;
      d = golden * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0 ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      (u < x ? b : a) = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx, iter};
}

}  // namespace vacuum::numerics
