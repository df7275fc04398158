#pragma once

// Domain types in atomic units and the rectangular-window laser pulse.

#include <cmath>
#include <complex>
#include <numbers>

namespace qvortex {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Radius of the momentum-space vortex ring, where k^2 + 1 = 2 pi.
inline const double k0 = std::sqrt(2.0 * pi - 1.0);
/// k0 * k0 rather than 2 pi - 1, so that k^2 - k0^2 is exactly zero at ky == k0.
inline const double k0_squared = k0 * k0;

/// Partial derivatives of a complex field with respect to the two Cartesian
/// coordinates (kx, ky) or (x, y).
struct Gradient {
  Complex du;
  Complex dv;
};

struct PulseParams {
  double F0 = 0.0;     // peak field strength
  double omega = pi;   // carrier frequency
  double T = 4.0;      // duration
  double alpha = 0.0;  // initial phase

  /// Throws PreconditionError unless F0 >= 0, T > 0, omega > 0.
  void validate() const;
  /// True for omega = pi, T = 4, alpha = 0 (the closed forms are derived for it).
  bool is_canonical() const noexcept;
};

PulseParams canonical_pulse(double F0);

struct MomentumPoint {
  double kx = 0.0;
  double ky = 0.0;

  static MomentumPoint from_polar(double k, double phi) { return {k * std::cos(phi), k * std::sin(phi)}; }
  double k() const noexcept { return std::hypot(kx, ky); }
  double k_squared() const noexcept { return kx * kx + ky * ky; }
  double phi() const noexcept { return std::atan2(ky, kx); }
  double energy() const noexcept { return 0.5 * k_squared(); }
};

struct PositionPoint {
  double x = 0.0;
  double y = 0.0;

  static PositionPoint from_polar(double r, double phi) { return {r * std::cos(phi), r * std::sin(phi)}; }
  double r() const noexcept { return std::hypot(x, y); }
  double r_squared() const noexcept { return x * x + y * y; }
  double phi() const noexcept { return std::atan2(y, x); }
};

/// x-component of F(t): F0 cos(omega t - alpha) on the closed interval [0, T], zero elsewhere.
double laser_field(double t, const PulseParams& p) noexcept;

/// Bound-continuum transition frequency (k^2 + 1)/2.
double transition_frequency(double k);

}  // namespace qvortex
