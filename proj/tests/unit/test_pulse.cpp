#include <cmath>

#include "doctest.h"
#include "qvortex/errors.hpp"
#include "qvortex/pulse.hpp"
#include "qvortex/quadrature.hpp"

using namespace qvortex;

TEST_CASE("laser field support and values") {
  const auto p = canonical_pulse(0.4);
  CHECK(laser_field(-1.0, p) == 0.0);
  CHECK(laser_field(4.0 + 1e-12, p) == 0.0);
  CHECK(laser_field(0.0, p) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(laser_field(2.0, p) == doctest::Approx(0.4 * std::cos(2.0 * pi)).epsilon(1e-15));
  CHECK(laser_field(4.0, p) == doctest::Approx(0.4).epsilon(1e-14));  // closed interval
  CHECK(laser_field(0.5, p) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("laser field integrates to its antiderivative") {
  for (const PulseParams p : {canonical_pulse(0.4), PulseParams{1.3, 2.1, 3.7, 0.6}}) {
    const auto r = integrate_adaptive([&](double t) { return laser_field(t, p); }, 0.0, p.T, 1e-14);
    const double analytic = p.F0 / p.omega * (std::sin(p.omega * p.T - p.alpha) + std::sin(p.alpha));
    CHECK(std::abs(r.value - analytic) < 1e-12);
  }
}

TEST_CASE("pulse parameter validation") {
  CHECK_THROWS_AS(canonical_pulse(-0.1), PreconditionError);
  CHECK_THROWS_AS((PulseParams{0.4, 0.0, 4.0, 0.0}.validate()), PreconditionError);
  CHECK_THROWS_AS((PulseParams{0.4, pi, -1.0, 0.0}.validate()), PreconditionError);
  const auto c = canonical_pulse(0.7);
  CHECK(c.is_canonical());
  CHECK(c.F0 == 0.7);
  CHECK_FALSE((PulseParams{0.4, pi, 4.0, 0.1}.is_canonical()));
}

TEST_CASE("transition frequency") {
  CHECK(transition_frequency(0.0) == 0.5);
  CHECK(transition_frequency(1.0) == 1.0);
  CHECK(transition_frequency(k0) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(std::abs(k0_squared - (2.0 * pi - 1.0)) < 1e-14);
  CHECK_THROWS_AS(transition_frequency(-1.0), PreconditionError);
}

TEST_CASE("polar and Cartesian points round trip") {
  for (double k : {0.3, 1.0, 2.29852, 7.5}) {
    for (double phi : {-3.0, -1.0, 0.0, 0.7, 3.1}) {
      const auto m = MomentumPoint::from_polar(k, phi);
      CHECK(m.k() == doctest::Approx(k).epsilon(1e-15));
      CHECK(m.phi() == doctest::Approx(phi).epsilon(1e-15));
      CHECK(m.energy() >= 0.0);
      const auto r = PositionPoint::from_polar(k, phi);
      CHECK(r.r() == doctest::Approx(k).epsilon(1e-15));
    }
  }
}
