#pragma once

// Coordinate-space wave packet obtained from the near-center momentum form.

#include <functional>

#include "qvortex/pulse.hpp"
#include "qvortex/quadrature.hpp"

namespace qvortex {

/// tau = t - 2 (pulse midpoint) and the squared Gaussian width a^2(tau) = (4 + pi^2 tau^2)/pi.
struct PacketWidth {
  double tau;
  double a2;

  double a() const noexcept { return std::sqrt(a2); }
};

PacketWidth packet_width(double t) noexcept;

/// a^-3 exp(-r^2/a^2 + i pi tau r^2/(2a^2)) [ (F0(4(pi-1) + pi^2(r^2 - k0^2 tau^2)) - 6 pi^3 x)
///                                            + i pi tau (2 F0 (3 pi - 2) - 3 pi^3 x) ]
/// Valid for t >= 4.
Complex psi_position(const PositionPoint& p, double t, double F0);
Gradient psi_position_gradient(const PositionPoint& p, double t, double F0);

/// Modulus and phase kept apart so that far tails do not underflow.
struct LogPolar {
  double log_modulus;
  double phase;  // principal value in (-pi, pi]
};
LogPolar psi_position_log_polar(const PositionPoint& p, double t, double F0);

/// The bracketed quadratic polynomial alone (its zeros are the vortex centers).
Complex position_bracket(const PositionPoint& p, double t, double F0);

/// Numerical 2-D Fourier transform
///   psi(r) = int int psi_k(k) exp(i k.r) k dk dphi_k / (2 pi)^2
/// over the disk of the supplied polar rule.
Complex fourier_to_position(const std::function<Complex(const MomentumPoint&)>& psi_k, const PositionPoint& r,
                            const PolarRule& rule);

}  // namespace qvortex
