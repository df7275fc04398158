#include "qvortex/moments.hpp"

#include <cmath>
#include <vector>

#include "qvortex/errors.hpp"
#include "qvortex/parallel.hpp"
#include "qvortex/position_wave.hpp"

namespace qvortex {
namespace {

struct RawMoments {
  double m0 = 0.0, mu = 0.0, mv = 0.0, muu = 0.0, mvv = 0.0;
};

RawMoments integrate(const Wavefunction& psi, int n_radial, int n_angular, double r_max) {
  const auto rule = make_polar_rule(n_radial, n_angular, r_max);
  const std::size_t nr = rule.radius.size();
  std::vector<RawMoments> rings(nr);
  parallel_for(nr, [&](std::size_t i) {
    const double r = rule.radius[i];
    RawMoments ring;
    for (std::size_t j = 0; j < rule.cos_phi.size(); ++j) {
      const double u = r * rule.cos_phi[j], v = r * rule.sin_phi[j];
      const double rho = std::norm(psi.value(u, v));
      ring.m0 += rho;
      ring.mu += rho * u;
      ring.mv += rho * v;
      ring.muu += rho * u * u;
      ring.mvv += rho * v * v;
    }
    rings[i] = ring;
  });
  // Fixed-order reduction.
  RawMoments total;
  const double measure = psi.space() == Space::Momentum ? 1.0 / (2.0 * pi) : 1.0;
  for (std::size_t i = 0; i < nr; ++i) {
    const double w = rule.radial_weight[i] * rule.angular_weight * measure;
    total.m0 += w * rings[i].m0;
    total.mu += w * rings[i].mu;
    total.mv += w * rings[i].mv;
    total.muu += w * rings[i].muu;
    total.mvv += w * rings[i].mvv;
  }
  return total;
}

MomentReport to_report(const RawMoments& m) {
  MomentReport r;
  r.norm = m.m0;
  r.mean_u = m.mu / m.m0;
  r.mean_v = m.mv / m.m0;
  r.var_u = m.muu / m.m0 - r.mean_u * r.mean_u;
  r.var_v = m.mvv / m.m0 - r.mean_v * r.mean_v;
  r.method = MomentMethod::NumericExact;
  return r;
}

double discrepancy(const MomentReport& a, const MomentReport& b) {
  auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); };
  const double spread = std::sqrt(std::max(b.var_u + b.var_v, 1e-300));
  return std::max({rel(a.norm, b.norm), rel(a.var_u, b.var_u), rel(a.var_v, b.var_v),
                   std::abs(a.mean_u - b.mean_u) / spread, std::abs(a.mean_v - b.mean_v) / spread});
}

}  // namespace

double default_cutoff(Space space, double t) {
  if (space == Space::Momentum) return k0 + 8.0;
  return 6.0 * packet_width(t).a();
}

MomentReport polar_moments(const Wavefunction& psi, const QuadratureSpec& q) {
  q.validate();
  int n = q.n_radial;
  double r = q.r_max > 0.0 ? q.r_max : default_cutoff(psi.space(), psi.time());
  MomentReport coarse = to_report(integrate(psi, n, q.n_angular, r));
  double achieved = 0.0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    n *= 2;
    r *= 1.5;
    MomentReport fine = to_report(integrate(psi, n, q.n_angular, r));
    achieved = discrepancy(coarse, fine);
    if (achieved <= q.tol) return fine;
    coarse = fine;
  }
  throw NonConvergence("polar_moments: cutoff/resolution refinement did not settle", achieved);
}

MomentReport momentum_moments_numeric(double t, double F0, const QuadratureSpec& q, MomentumWavefunctionKind kind) {
  return polar_moments(Wavefunction::momentum(kind, t, F0), q);
}

std::pair<double, double> momentum_dispersion_closed_form(double F0) {
  const double pi2 = pi * pi, pi5 = pi2 * pi2 * pi;
  const double f2 = F0 * F0;
  const double shared = f2 * (4.0 - 8.0 * pi + 6.0 * pi2);
  const double denominator = 9.0 * pi5 + 2.0 * f2 * (2.0 - 6.0 * pi + 5.0 * pi2);
  return {pi / 4.0 * (27.0 * pi5 + shared) / denominator, pi / 4.0 * (9.0 * pi5 + shared) / denominator};
}

MomentReport position_moments(double t, double F0, PositionMomentMode mode, const QuadratureSpec& q) {
  if (!(t >= 4.0)) throw PreconditionError("position_moments: requires t >= T = 4");
  if (mode == PositionMomentMode::Numeric) return polar_moments(Wavefunction::position(t, F0), q);
  const double tau = t - 2.0;
  const double pi5 = std::pow(pi, 5);
  MomentReport r;
  r.method = MomentMethod::ClosedFormApprox;
  r.norm = 1.0;
  r.mean_u = -(12.0 * k0_squared / (9.0 * pi5)) * F0;
  r.mean_v = 0.0;
  r.var_u = 3.0 * pi * tau * tau / 4.0;
  r.var_v = pi * tau * tau / 4.0;
  return r;
}

double normalize(const Wavefunction& psi, const QuadratureSpec& q) {
  return 1.0 / std::sqrt(polar_moments(psi, q).norm);
}

}  // namespace qvortex
