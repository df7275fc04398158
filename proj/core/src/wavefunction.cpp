#include "qvortex/wavefunction.hpp"

#include <cmath>

#include "qvortex/errors.hpp"

namespace qvortex {

std::string_view to_string(Space s) noexcept { return s == Space::Momentum ? "k" : "r"; }

std::string_view to_string(MomentumWavefunctionKind k) noexcept {
  switch (k) {
    case MomentumWavefunctionKind::ExactClosedForm: return "exact";
    case MomentumWavefunctionKind::NearCenterApprox: return "approx";
    case MomentumWavefunctionKind::GenericQuadrature: return "quad";
  }
  return "?";
}

Wavefunction::Wavefunction(Representation rep, const PulseParams& pulse, double t, QuadratureSpec time_quadrature)
    : rep_(rep), pulse_(pulse), t_(t), time_quadrature_(time_quadrature) {
  pulse_.validate();
  const bool generic = rep_.space == Space::Momentum && rep_.kind == MomentumWavefunctionKind::GenericQuadrature;
  if (generic) {
    if (!(t_ >= 0.0)) throw PreconditionError("wavefunction: requires t >= 0");
  } else {
    if (!pulse_.is_canonical()) {
      throw PreconditionError("wavefunction: closed forms require omega = pi, T = 4, alpha = 0");
    }
    if (!(t_ >= pulse_.T)) throw PreconditionError("wavefunction: closed forms require t >= T = 4");
  }
}

Wavefunction Wavefunction::momentum(MomentumWavefunctionKind kind, double t, double F0) {
  return Wavefunction({Space::Momentum, kind}, canonical_pulse(F0), t);
}

Wavefunction Wavefunction::position(double t, double F0) {
  return Wavefunction({Space::Position, MomentumWavefunctionKind::NearCenterApprox}, canonical_pulse(F0), t);
}

bool Wavefunction::has_analytic_gradient() const noexcept {
  return !(rep_.space == Space::Momentum && rep_.kind == MomentumWavefunctionKind::GenericQuadrature);
}

Complex Wavefunction::value(double u, double v) const {
  if (rep_.space == Space::Position) return psi_position({u, v}, t_, pulse_.F0);
  switch (rep_.kind) {
    case MomentumWavefunctionKind::ExactClosedForm: return psi_momentum_exact({u, v}, t_, pulse_.F0);
    case MomentumWavefunctionKind::NearCenterApprox: return psi_momentum_near_center({u, v}, t_, pulse_.F0);
    case MomentumWavefunctionKind::GenericQuadrature:
      return psi_momentum_generic({u, v}, t_, pulse_, time_quadrature_);
  }
  return {};
}

Gradient Wavefunction::gradient(double u, double v) const {
  if (rep_.space == Space::Position) return psi_position_gradient({u, v}, t_, pulse_.F0);
  switch (rep_.kind) {
    case MomentumWavefunctionKind::ExactClosedForm: return psi_momentum_exact_gradient({u, v}, t_, pulse_.F0);
    case MomentumWavefunctionKind::NearCenterApprox:
      return psi_momentum_near_center_gradient({u, v}, t_, pulse_.F0);
    case MomentumWavefunctionKind::GenericQuadrature: return gradient_central(u, v);
  }
  return {};
}

Gradient Wavefunction::gradient_central(double u, double v, double h) const {
  return {(value(u + h, v) - value(u - h, v)) / (2.0 * h), (value(u, v + h) - value(u, v - h)) / (2.0 * h)};
}

double Wavefunction::log_modulus(double u, double v) const {
  if (rep_.space == Space::Position) return psi_position_log_polar({u, v}, t_, pulse_.F0).log_modulus;
  if (rep_.kind == MomentumWavefunctionKind::NearCenterApprox) {
    return psi_momentum_near_center_log_modulus({u, v}, pulse_.F0);
  }
  return std::log(std::abs(value(u, v)));
}

}  // namespace qvortex
