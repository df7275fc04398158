#include "qvortex/quadrature.hpp"

#include <numbers>

namespace qvortex {

void QuadratureSpec::validate() const {
  if (n_radial < 1) throw PreconditionError("quadrature: n_radial must be positive");
  if (n_angular < 1) throw PreconditionError("quadrature: n_angular must be positive");
  if (!std::isfinite(r_max)) throw PreconditionError("quadrature: r_max must be finite");
  if (!(tol > 0.0)) throw PreconditionError("quadrature: tol must be > 0");
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: n must be positive");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

PolarRule make_polar_rule(int n_radial, int n_angular, double r_max, int panel_nodes) {
  if (n_radial < 1 || n_angular < 1 || !(r_max > 0.0) || panel_nodes < 1) {
    throw PreconditionError("make_polar_rule: invalid resolution or cutoff");
  }
  const int panels = (n_radial + panel_nodes - 1) / panel_nodes;
  const auto gl = gauss_legendre(panel_nodes);
  PolarRule rule;
  rule.radius.reserve(static_cast<std::size_t>(panels) * panel_nodes);
  rule.radial_weight.reserve(rule.radius.capacity());
  const double width = r_max / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = p * width;
    for (int j = 0; j < panel_nodes; ++j) {
      const double r = a + 0.5 * width * (gl.nodes[j] + 1.0);
      rule.radius.push_back(r);
      rule.radial_weight.push_back(0.5 * width * gl.weights[j] * r);
    }
  }
  rule.cos_phi.resize(n_angular);
  rule.sin_phi.resize(n_angular);
  for (int j = 0; j < n_angular; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / n_angular;
    rule.cos_phi[j] = std::cos(phi);
    rule.sin_phi[j] = std::sin(phi);
  }
  rule.angular_weight = 2.0 * std::numbers::pi / n_angular;
  return rule;
}

}  // namespace qvortex
