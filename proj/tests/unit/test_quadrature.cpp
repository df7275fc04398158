#include <cmath>
#include <complex>

#include "doctest.h"
#include "qvortex/errors.hpp"
#include "qvortex/pulse.hpp"
#include "qvortex/quadrature.hpp"

using namespace qvortex;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 5, 16, 40}) {
    const auto gl = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : gl.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    const int degree = 2 * n - 2;  // even monomial of top degree
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], degree);
    CHECK(s == doctest::Approx(2.0 / (degree + 1)).epsilon(1e-13));
  }
}

TEST_CASE("adaptive Gauss-Kronrod on oscillatory complex integrands") {
  const double w = 17.3;
  const auto r = integrate_adaptive([&](double t) { return std::polar(1.0, w * t); }, 0.0, 4.0, 1e-13);
  const std::complex<double> exact = (std::polar(1.0, 4.0 * w) - 1.0) / std::complex<double>(0.0, w);
  CHECK(std::abs(r.value - exact) < 1e-13);
  CHECK(r.error < 1e-12);
}

TEST_CASE("adaptive quadrature reports non-convergence") {
  auto spike = [](double t) { return 1.0 / std::sqrt(std::abs(t - 0.3) + 1e-300); };
  CHECK_THROWS_AS(integrate_adaptive(spike, 0.0, 1.0, 1e-15, 20), NonConvergence);
}

TEST_CASE("empty interval integrates to zero") {
  const auto r = integrate_adaptive([](double) { return std::complex<double>(1.0, 1.0); }, 1.0, 1.0, 1e-10);
  CHECK(r.value == std::complex<double>{});
}

TEST_CASE("uniform angular rule annihilates cos(phi)cos(n phi) and sin(phi)cos(n phi)") {
  const auto rule = make_polar_rule(16, 16, 1.0);
  for (int n : {0, 2, 4}) {
    double c = 0.0, s = 0.0;
    for (std::size_t j = 0; j < rule.cos_phi.size(); ++j) {
      const double phi = std::atan2(rule.sin_phi[j], rule.cos_phi[j]);
      c += rule.angular_weight * rule.cos_phi[j] * std::cos(n * phi);
      s += rule.angular_weight * rule.sin_phi[j] * std::cos(n * phi);
    }
    CHECK(std::abs(c) < 1e-14);
    CHECK(std::abs(s) < 1e-14);
  }
}

TEST_CASE("polar rule integrates a Gaussian over the plane") {
  const auto rule = make_polar_rule(64, 16, 8.0);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.radius.size(); ++i) {
    s += rule.radial_weight[i] * rule.angular_weight * rule.cos_phi.size() * std::exp(-rule.radius[i] * rule.radius[i]);
  }
  CHECK(s == doctest::Approx(pi).epsilon(1e-13));
}

TEST_CASE("quadrature spec validation") {
  CHECK_THROWS_AS((QuadratureSpec{0, 16, 1.0, 1e-6}.validate()), PreconditionError);
  CHECK_THROWS_AS((QuadratureSpec{16, 16, 1.0, 0.0}.validate()), PreconditionError);
  CHECK_NOTHROW(QuadratureSpec{}.validate());
}
