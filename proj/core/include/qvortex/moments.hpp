#pragma once

// Norms, mean values and dispersions by 2-D polar quadrature, plus the
// closed-form moments of the near-center approximations.
//
// Momentum-space integrals use the measure d^2k/(2pi); position-space ones d^2r.

#include <utility>

#include "qvortex/momentum_wave.hpp"
#include "qvortex/quadrature.hpp"
#include "qvortex/wavefunction.hpp"

namespace qvortex {

enum class MomentMethod { NumericExact, ClosedFormApprox };

struct MomentReport {
  double mean_u = 0.0;
  double mean_v = 0.0;
  double var_u = 0.0;
  double var_v = 0.0;
  double norm = 0.0;
  MomentMethod method = MomentMethod::NumericExact;
};

/// Default radial cutoff: k0 + 8 in momentum space, 6 a(tau) in position space.
double default_cutoff(Space space, double t);

/// Moments of |psi|^2 on the disk r <= q.r_max (or the default cutoff).
/// A value is accepted once the (n_radial, r_max) and (2 n_radial, 1.5 r_max)
/// results agree to q.tol (relative for norm and second moments, relative to
/// the spread for means); up to three refinements are tried before
/// NonConvergence is thrown.
MomentReport polar_moments(const Wavefunction& psi, const QuadratureSpec& q);

MomentReport momentum_moments_numeric(double t, double F0, const QuadratureSpec& q,
                                      MomentumWavefunctionKind kind = MomentumWavefunctionKind::ExactClosedForm);

/// (<kx^2>, <ky^2>) of the near-center momentum form.
std::pair<double, double> momentum_dispersion_closed_form(double F0);

enum class PositionMomentMode { Numeric, ClosedForm };

/// ClosedForm: <x> = -(12 k0^2/(9 pi^5)) F0, <y> = 0, var_x = 3 pi tau^2/4,
/// var_y = pi tau^2/4 (norm reported as 1). Numeric integrates |psi_position|^2.
MomentReport position_moments(double t, double F0, PositionMomentMode mode, const QuadratureSpec& q = {});

/// Scale c with int |c psi|^2 dmu = 1.
double normalize(const Wavefunction& psi, const QuadratureSpec& q);

}  // namespace qvortex
