#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qvortex {

/// Argument outside the documented domain of an operation.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative or adaptive procedure failed to reach its tolerance.
class NonConvergence : public std::runtime_error {
public:
  NonConvergence(const std::string& what, double achieved, double last_u = 0.0, double last_v = 0.0)
      : std::runtime_error(what), achieved_(achieved), last_u_(last_u), last_v_(last_v) {}

  double achieved() const noexcept { return achieved_; }
  std::pair<double, double> last_iterate() const noexcept { return {last_u_, last_v_}; }

private:
  double achieved_;
  double last_u_;
  double last_v_;
};

/// Velocity requested where the density is below the floor (vortex core).
class SingularNode : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Zero set is a curve rather than isolated points (e.g. F0 = 0).
class DegenerateZeroSet : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Trajectory continuation jumped further than the packet width.
class TrackLoss : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace qvortex
