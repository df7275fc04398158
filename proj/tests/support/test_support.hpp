#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace qvortex::testing {

/// Fixed-seed uniform points in a rectangle.
inline std::vector<std::pair<double, double>> random_points(std::size_t n, double umin, double umax, double vmin,
                                                            double vmax, std::uint64_t seed = 20261014) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> du(umin, umax), dv(vmin, vmax);
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = du(rng);
    out.emplace_back(u, dv(rng));
  }
  return out;
}

inline double rel_err(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::abs(b); }

}  // namespace qvortex::testing
