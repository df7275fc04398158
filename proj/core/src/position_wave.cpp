#include "qvortex/position_wave.hpp"

#include <cmath>

#include "qvortex/errors.hpp"

namespace qvortex {
namespace {

void require_after_pulse(double t) {
  if (!(t >= 4.0) || !std::isfinite(t)) throw PreconditionError("psi_position: requires t >= T = 4");
}

// exp(gamma r^2) with gamma = -1/a^2 + i pi tau/(2 a^2).
Complex gaussian_rate(const PacketWidth& w) { return {-1.0 / w.a2, pi * w.tau / (2.0 * w.a2)}; }

}  // namespace

PacketWidth packet_width(double t) noexcept {
  const double tau = t - 2.0;
  return {tau, (4.0 + pi * pi * tau * tau) / pi};
}

Complex position_bracket(const PositionPoint& p, double t, double F0) {
  const double tau = t - 2.0;
  const double pi3 = pi * pi * pi;
  const double re = F0 * (4.0 * (pi - 1.0) + pi * pi * (p.r_squared() - k0_squared * tau * tau)) - 6.0 * pi3 * p.x;
  const double im = pi * tau * (2.0 * F0 * (3.0 * pi - 2.0) - 3.0 * pi3 * p.x);
  return {re, im};
}

Complex psi_position(const PositionPoint& p, double t, double F0) {
  require_after_pulse(t);
  const auto w = packet_width(t);
  return std::pow(w.a2, -1.5) * std::exp(gaussian_rate(w) * p.r_squared()) * position_bracket(p, t, F0);
}

Gradient psi_position_gradient(const PositionPoint& p, double t, double F0) {
  require_after_pulse(t);
  const auto w = packet_width(t);
  const Complex rate = gaussian_rate(w);
  const Complex envelope = std::pow(w.a2, -1.5) * std::exp(rate * p.r_squared());
  const Complex bracket = position_bracket(p, t, F0);
  const double pi2 = pi * pi, pi3 = pi2 * pi;
  const Complex dbx{2.0 * F0 * pi2 * p.x - 6.0 * pi3, -3.0 * pi3 * pi * w.tau};
  const Complex dby{2.0 * F0 * pi2 * p.y, 0.0};
  return {envelope * (2.0 * p.x * rate * bracket + dbx), envelope * (2.0 * p.y * rate * bracket + dby)};
}

LogPolar psi_position_log_polar(const PositionPoint& p, double t, double F0) {
  require_after_pulse(t);
  const auto w = packet_width(t);
  const Complex bracket = position_bracket(p, t, F0);
  const double r2 = p.r_squared();
  const double log_mod = -1.5 * std::log(w.a2) - r2 / w.a2 + std::log(std::abs(bracket));
  const double phase = std::arg(bracket * std::polar(1.0, std::remainder(pi * w.tau * r2 / (2.0 * w.a2), 2.0 * pi)));
  return {log_mod, phase};
}

Complex fourier_to_position(const std::function<Complex(const MomentumPoint&)>& psi_k, const PositionPoint& r,
                            const PolarRule& rule) {
  Complex sum{};
  for (std::size_t i = 0; i < rule.radius.size(); ++i) {
    const double k = rule.radius[i];
    Complex ring{};
    for (std::size_t j = 0; j < rule.cos_phi.size(); ++j) {
      const MomentumPoint kp{k * rule.cos_phi[j], k * rule.sin_phi[j]};
      ring += psi_k(kp) * std::polar(1.0, kp.kx * r.x + kp.ky * r.y);
    }
    sum += rule.radial_weight[i] * ring;
  }
  return sum * rule.angular_weight / (4.0 * pi * pi);
}

}  // namespace qvortex
