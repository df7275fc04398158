#include "qvortex/pulse.hpp"

#include "qvortex/errors.hpp"

namespace qvortex {

void PulseParams::validate() const {
  if (!(F0 >= 0.0) || !std::isfinite(F0)) throw PreconditionError("pulse: F0 must be finite and >= 0");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw PreconditionError("pulse: omega must be > 0");
  if (!(T > 0.0) || !std::isfinite(T)) throw PreconditionError("pulse: T must be > 0");
  if (!std::isfinite(alpha)) throw PreconditionError("pulse: alpha must be finite");
}

bool PulseParams::is_canonical() const noexcept {
  return omega == pi && T == 4.0 && alpha == 0.0;
}

PulseParams canonical_pulse(double F0) {
  PulseParams p{F0, pi, 4.0, 0.0};
  p.validate();
  return p;
}

double laser_field(double t, const PulseParams& p) noexcept {
  if (t < 0.0 || t > p.T) return 0.0;
  return p.F0 * std::cos(p.omega * t - p.alpha);
}

double transition_frequency(double k) {
  if (k < 0.0) throw PreconditionError("transition_frequency: k must be >= 0");
  return 0.5 * (k * k + 1.0);
}

}  // namespace qvortex
