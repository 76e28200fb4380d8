#pragma once

#include <array>

namespace vacuum::numerics {

// Endpoint data for a Hermite segment: value and first two derivatives.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// Value and first two derivatives of the Hermite interpolant on [x0, x0 + h]
// at local coordinate s in [0, 1]. With `order == 5` the quintic matching
// value, slope and curvature at both ends is used; `order == 3` ignores the
// curvature and gives the cubic matching value and slope.
inline Jet hermite_segment(const Jet& left, const Jet& right, double h, double s, int order = 5) {
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  if (order == 3) {
    const std::array<double, 4> b{2 * s3 - 3 * s2 + 1, s3 - 2 * s2 + s, -2 * s3 + 3 * s2, s3 - s2};
    const std::array<double, 4> db{6 * s2 - 6 * s, 3 * s2 - 4 * s + 1, -6 * s2 + 6 * s, 3 * s2 - 2 * s};
    const std::array<double, 4> ddb{12 * s - 6, 6 * s - 4, -12 * s + 6, 6 * s - 2};
    auto combine = [&](const std::array<double, 4>& w) {
      return w[0] * left.value + h * w[1] * left.d1 + w[2] * right.value + h * w[3] * right.d1;
    };
    return {combine(b), combine(db) / h, combine(ddb) / (h * h)};
  }
  const std::array<double, 6> b{
      1 - 10 * s3 + 15 * s4 - 6 * s5,   s - 6 * s3 + 8 * s4 - 3 * s5,
      0.5 * (s2 - 3 * s3 + 3 * s4 - s5), 10 * s3 - 15 * s4 + 6 * s5,
      -4 * s3 + 7 * s4 - 3 * s5,         0.5 * (s3 - 2 * s4 + s5)};
  const std::array<double, 6> db{
      -30 * s2 + 60 * s3 - 30 * s4,        1 - 18 * s2 + 32 * s3 - 15 * s4,
      0.5 * (2 * s - 9 * s2 + 12 * s3 - 5 * s4), 30 * s2 - 60 * s3 + 30 * s4,
      -12 * s2 + 28 * s3 - 15 * s4,        0.5 * (3 * s2 - 8 * s3 + 5 * s4)};
  const std::array<double, 6> ddb{
      -60 * s + 180 * s2 - 120 * s3,  -36 * s + 96 * s2 - 60 * s3,
      0.5 * (2 - 18 * s + 36 * s2 - 20 * s3), 60 * s - 180 * s2 + 120 * s3,
      -24 * s + 84 * s2 - 60 * s3,    0.5 * (6 * s - 24 * s2 + 20 * s3)};
  auto combine = [&](const std::array<double, 6>& w) {
    return w[0] * left.value + h * w[1] * left.d1 + h * h * w[2] * left.d2 + w[3] * right.value +
           h * w[4] * right.d1 + h * h * w[5] * right.d2;
  };
  return {combine(b), combine(db) / h, combine(ddb) / (h * h)};
}

}  // namespace vacuum::numerics
