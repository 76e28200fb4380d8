#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace vacuum::numerics {

// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

inline GaussRule gauss_legendre(int points) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(points, points);
  for (int k = 1; k < points; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

// Composite rule over the panels delimited by `breaks` (sorted, at least two
// entries).
inline GaussRule composite_gauss(std::span<const double> breaks, const GaussRule& base) {
  const Eigen::Index per = base.nodes.size();
  const Eigen::Index panels = static_cast<Eigen::Index>(breaks.size()) - 1;
  GaussRule out;
  out.nodes.resize(per * panels);
  out.weights.resize(per * panels);
  for (Eigen::Index p = 0; p < panels; ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    out.nodes.segment(p * per, per) = (half * base.nodes.array() + mid).matrix();
    out.weights.segment(p * per, per) = half * base.weights;
  }
  return out;
}

// Integral of f over [0, inf) after the substitution x = s / (1 - s).
template <typename Function>
double integrate_half_line(Function&& f, int panels = 64, int points = 20) {
  const GaussRule base = gauss_legendre(points);
  std::vector<double> breaks(panels + 1);
  for (int i = 0; i <= panels; ++i) breaks[i] = static_cast<double>(i) / panels;
  const GaussRule rule = composite_gauss(breaks, base);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    const double s = rule.nodes[i];
    const double x = s / (1.0 - s);
    sum += rule.weights[i] * f(x) / ((1.0 - s) * (1.0 - s));
  }
  return sum;
}

}  // namespace vacuum::numerics
