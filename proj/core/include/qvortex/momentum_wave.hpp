#pragma once

// Photoelectron wavefunction in momentum space after the pulse:
//  - the closed form for the canonical pulse (omega = pi, T = 4, alpha = 0),
//  - its Gaussian-times-polynomial approximation near the vortex ring k = k0,
//  - the generic second-order assembly from time-integrated amplitudes.
//
// The normalization constant in front of both closed forms is 1.

#include <utility>

#include "qvortex/pulse.hpp"
#include "qvortex/quadrature.hpp"

namespace qvortex {

enum class MomentumWavefunctionKind { ExactClosedForm, NearCenterApprox, GenericQuadrature };

/// First-order m = 1 and second-order m = 0, m = 2 amplitudes at fixed (k, t).
struct AmplitudeSet {
  Complex b1_m1;
  Complex b2_m0;
  Complex b2_m2;
};

/// Closed form for the canonical pulse. Valid for t >= T = 4; throws
/// PreconditionError otherwise. Finite everywhere, including the rings
/// (k^2+1)^2 = 4 pi^2 and (k^2+1)^2 = 16 pi^2.
Complex psi_momentum_exact(const MomentumPoint& p, double t, double F0);
Gradient psi_momentum_exact_gradient(const MomentumPoint& p, double t, double F0);

/// exp(-(k^2-k0^2)/pi + i(k^2 - E_k t)) * [k cos(phi) + i F0 (k^2-k0^2)/(3 pi^2)], t >= 4.
Complex psi_momentum_near_center(const MomentumPoint& p, double t, double F0);
Gradient psi_momentum_near_center_gradient(const MomentumPoint& p, double t, double F0);
/// ln|psi| of the near-center form without forming the Gaussian (no underflow).
double psi_momentum_near_center_log_modulus(const MomentumPoint& p, double F0);

/// b^(1)_{k,1}(t) = -3ik/(k^2+1)^{5/2} * int_0^t F(t') exp(i w_k1 t') dt'.
/// The time integral is an adaptive Gauss-Kronrod quadrature to relative
/// tolerance q.tol; NonConvergence carries the achieved error estimate.
Complex amplitude_b1(double k, double t, const PulseParams& pulse, const QuadratureSpec& q);

/// Second-order amplitudes (m = 0, m = 2). The k-derivative of b^(1) is taken
/// analytically under the integral. Requires k > 0.
std::pair<Complex, Complex> amplitude_b2(double k, double t, const PulseParams& pulse, const QuadratureSpec& q);

AmplitudeSet amplitudes(double k, double t, const PulseParams& pulse, const QuadratureSpec& q);

/// -i sqrt(2/pi) b1 cos(phi) e^{-iEt} + b2_m0 e^{-iEt}/sqrt(2 pi) - sqrt(2/pi) b2_m2 cos(2 phi) e^{-iEt}.
Complex psi_momentum_generic(const MomentumPoint& p, double t, const PulseParams& pulse, const QuadratureSpec& q);

}  // namespace qvortex
