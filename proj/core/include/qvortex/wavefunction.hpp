#pragma once

// A wavefunction bound to a representation, pulse and time: the common
// evaluation surface for grid sampling, flux and vortex search.

#include <string_view>

#include "qvortex/momentum_wave.hpp"
#include "qvortex/position_wave.hpp"
#include "qvortex/pulse.hpp"
#include "qvortex/quadrature.hpp"

namespace qvortex {

enum class Space { Momentum, Position };

struct Representation {
  Space space = Space::Momentum;
  MomentumWavefunctionKind kind = MomentumWavefunctionKind::ExactClosedForm;  // ignored in position space
};

std::string_view to_string(Space s) noexcept;
std::string_view to_string(MomentumWavefunctionKind k) noexcept;

class Wavefunction {
public:
  /// Closed forms (exact, near-center, position) require the canonical pulse
  /// and t >= 4; the generic kind accepts any pulse and t >= 0.
  Wavefunction(Representation rep, const PulseParams& pulse, double t, QuadratureSpec time_quadrature = {});

  static Wavefunction momentum(MomentumWavefunctionKind kind, double t, double F0);
  static Wavefunction position(double t, double F0);

  const Representation& representation() const noexcept { return rep_; }
  Space space() const noexcept { return rep_.space; }
  const PulseParams& pulse() const noexcept { return pulse_; }
  double F0() const noexcept { return pulse_.F0; }
  double time() const noexcept { return t_; }

  Complex value(double u, double v) const;
  /// Analytic derivatives for the closed forms; central differences for the
  /// generic kind.
  Gradient gradient(double u, double v) const;
  Gradient gradient_central(double u, double v, double h = 1e-5) const;
  double log_modulus(double u, double v) const;
  bool has_analytic_gradient() const noexcept;

private:
  Representation rep_;
  PulseParams pulse_;
  double t_;
  QuadratureSpec time_quadrature_;
};

}  // namespace qvortex
