#include <cmath>

#include "doctest.h"
#include "qvortex/errors.hpp"
#include "qvortex/moments.hpp"
#include "qvortex/position_wave.hpp"

using namespace qvortex;
using Kind = MomentumWavefunctionKind;

namespace {
const QuadratureSpec fine{256, 64, 0.0, 1e-7};
}

TEST_CASE("momentum means vanish") {
  for (auto kind : {Kind::ExactClosedForm, Kind::NearCenterApprox}) {
    const auto m = momentum_moments_numeric(5.0, 0.4, fine, kind);
    CHECK(std::abs(m.mean_u) < 1e-8);
    CHECK(std::abs(m.mean_v) < 1e-8);
    CHECK(m.norm > 0.0);
    CHECK(m.var_u > 0.0);
    CHECK(m.var_v > 0.0);
  }
}

TEST_CASE("closed-form dispersions") {
  const auto [xx, yy] = momentum_dispersion_closed_form(0.0);
  CHECK(xx == doctest::Approx(3.0 * pi / 4.0).epsilon(1e-15));
  CHECK(yy == doctest::Approx(pi / 4.0).epsilon(1e-15));
  const auto [x4, y4] = momentum_dispersion_closed_form(0.4);
  // Weak field dependence: about 3e-3 and 1.6e-3 relative at F0 = 0.4.
  CHECK(std::abs(x4 / xx - 1.0) < 5e-3);
  CHECK(std::abs(y4 / yy - 1.0) < 5e-3);
  for (double F0 : {0.0, 0.4, 1.0, 4.0, 20.0}) {
    const auto [a, b] = momentum_dispersion_closed_form(F0);
    CHECK(a > b);
  }
  const auto [s, t] = momentum_dispersion_closed_form(1e-6);
  CHECK(s / t == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("closed-form dispersions agree with quadrature of the near-center form") {
  for (double F0 : {0.0, 0.4, 4.0}) {
    const auto m = momentum_moments_numeric(5.0, F0, fine, Kind::NearCenterApprox);
    const auto [xx, yy] = momentum_dispersion_closed_form(F0);
    CHECK(m.var_u == doctest::Approx(xx).epsilon(1e-6));
    CHECK(m.var_v == doctest::Approx(yy).epsilon(1e-6));
  }
}

TEST_CASE("exact-to-approximate dispersion ratio") {
  const auto m = momentum_moments_numeric(5.0, 0.4, fine);
  const auto [xx, yy] = momentum_dispersion_closed_form(0.4);
  CHECK(m.var_u / xx >= 1.10);
  CHECK(m.var_u / xx <= 1.30);
  CHECK(m.var_v / yy >= 1.10);
  CHECK(m.var_v / yy <= 1.30);
}

TEST_CASE("refinement self-consistency and failure") {
  const auto a = momentum_moments_numeric(5.0, 0.4, QuadratureSpec{256, 64, k0 + 8.0, 1e-7});
  const auto b = momentum_moments_numeric(5.0, 0.4, QuadratureSpec{512, 64, 1.5 * (k0 + 8.0), 1e-7});
  CHECK(std::abs(a.var_u / b.var_u - 1.0) < 1e-6);
  CHECK(std::abs(a.norm / b.norm - 1.0) < 1e-6);
  CHECK_THROWS_AS(momentum_moments_numeric(5.0, 0.4, QuadratureSpec{8, 64, 1.0, 1e-12}), NonConvergence);
}

TEST_CASE("normalization") {
  const auto psi = Wavefunction::momentum(Kind::ExactClosedForm, 5.0, 0.4);
  const double c = normalize(psi, fine);
  const auto m = polar_moments(psi, fine);
  CHECK(c * c * m.norm == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(normalize(Wavefunction::momentum(Kind::ExactClosedForm, 11.0, 0.4), fine) == doctest::Approx(c).epsilon(1e-10));
  // Moments are ratios of integrals: a scaled density gives the same report.
  const auto pos = Wavefunction::position(6.0, 0.4);
  const double cp = normalize(pos, fine);
  const auto mp = polar_moments(pos, fine);
  CHECK(cp * cp * mp.norm == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(position_moments(6.0, 0.4, PositionMomentMode::Numeric, fine).var_u == doctest::Approx(mp.var_u).epsilon(1e-12));
}

TEST_CASE("position moments") {
  const auto cf = position_moments(5.0, 0.4, PositionMomentMode::ClosedForm);
  CHECK(cf.mean_u == doctest::Approx(-12.0 * (2.0 * pi - 1.0) * 0.4 / (9.0 * std::pow(pi, 5))).epsilon(1e-14));
  CHECK(cf.mean_u == doctest::Approx(-9.21e-3).epsilon(1e-3));
  CHECK(cf.var_u == doctest::Approx(3.0 * pi * 9.0 / 4.0));
  CHECK(cf.var_v == doctest::Approx(pi * 9.0 / 4.0));
  CHECK(cf.method == MomentMethod::ClosedFormApprox);
  CHECK(position_moments(5.0, 0.0, PositionMomentMode::ClosedForm).mean_u == 0.0);
  CHECK(std::abs(position_moments(5.0, 0.0, PositionMomentMode::Numeric, fine).mean_u) < 1e-10);

  // Leading order in F0 of the numeric mean of the position packet.
  const auto num = position_moments(5.0, 0.4, PositionMomentMode::Numeric, fine);
  const double leading = -4.0 * k0_squared * 0.4 / (3.0 * std::pow(pi, 3));
  CHECK(num.mean_u == doctest::Approx(leading).epsilon(0.02));
  CHECK(std::abs(num.mean_v) < 1e-10);

  // At F0 = 0 the variances sum to a^2 exactly.
  for (double t : {5.0, 10.0}) {
    const auto z = position_moments(t, 0.0, PositionMomentMode::Numeric, fine);
    CHECK(z.var_u + z.var_v == doctest::Approx(packet_width(t).a2).epsilon(1e-7));
  }
  CHECK_THROWS_AS(position_moments(3.0, 0.4, PositionMomentMode::ClosedForm), PreconditionError);
}

TEST_CASE("a^2 against the sum of closed-form variances") {
  for (double tau : {3.0, 8.0}) {
    const auto m = position_moments(tau + 2.0, 0.4, PositionMomentMode::ClosedForm);
    const double a2 = packet_width(tau + 2.0).a2;
    CHECK(std::abs(a2 - (m.var_u + m.var_v)) / a2 < 0.05);
  }
}
