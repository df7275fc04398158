#pragma once

// Rectangular sampling of wavefunctions, densities, phases, symmetric flux
// and velocity fields.
//
// Layout: row-major with y varying fastest, index = i * ny + j, where node
// (i, j) sits at (xmin + i dx, ymin + j dy) and both endpoints are included.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qvortex/wavefunction.hpp"

namespace qvortex {

struct GridSpec {
  double xmin = -4.0;
  double xmax = 4.0;
  double ymin = -4.0;
  double ymax = 4.0;
  int nx = 400;
  int ny = 400;

  void validate() const;
  double dx() const noexcept { return nx > 1 ? (xmax - xmin) / (nx - 1) : 0.0; }
  double dy() const noexcept { return ny > 1 ? (ymax - ymin) / (ny - 1) : 0.0; }
  double x(int i) const noexcept { return nx > 1 ? xmin + i * dx() : 0.5 * (xmin + xmax); }
  double y(int j) const noexcept { return ny > 1 ? ymin + j * dy() : 0.5 * (ymin + ymax); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const noexcept { return static_cast<std::size_t>(i) * ny + j; }
};

/// Square window of half-width h centered on (cu, cv).
GridSpec window(double cu, double cv, double half_width, int n);

struct Vec2 {
  double u = 0.0;
  double v = 0.0;
};

struct DensitySample {
  double rho;
  double log_rho;  // -inf at exact zeros
};

template <class T>
struct FieldGrid {
  GridSpec spec;
  Space space = Space::Momentum;
  double time = 0.0;
  std::vector<T> values;
  std::vector<std::uint8_t> singular;  // 1 marks a flagged node

  const T& at(int i, int j) const { return values[spec.index(i, j)]; }
  T& at(int i, int j) { return values[spec.index(i, j)]; }
  bool is_singular(int i, int j) const { return singular[spec.index(i, j)] != 0; }
};

FieldGrid<Complex> wavefunction_grid(const Wavefunction& psi, const GridSpec& spec);
FieldGrid<DensitySample> density_grid(const Wavefunction& psi, const GridSpec& spec);
FieldGrid<DensitySample> density_from(const FieldGrid<Complex>& values);
/// Principal-value phase arg(psi) in (-pi, pi].
FieldGrid<double> phase_grid(const Wavefunction& psi, const GridSpec& spec);
FieldGrid<double> phase_from(const FieldGrid<Complex>& values);

Gradient wavefunction_gradient(const Wavefunction& psi, double u, double v);
Gradient wavefunction_gradient_central(const Wavefunction& psi, double u, double v, double h = 1e-5);

/// Im[psi* grad psi].
Vec2 symmetric_flux(const Wavefunction& psi, double u, double v);

/// Flux divided by density. Throws SingularNode when rho <= density_floor
/// (a single point has no peak to be relative to, so the floor is absolute).
Vec2 velocity_field(const Wavefunction& psi, double u, double v, double density_floor = 0.0);

/// Flux and velocity on a grid. Velocity nodes with rho <= relative_floor * max(rho)
/// are flagged singular and carry (0, 0).
FieldGrid<Vec2> flux_grid(const Wavefunction& psi, const GridSpec& spec);
FieldGrid<Vec2> velocity_grid(const Wavefunction& psi, const GridSpec& spec, double relative_floor = 1e-300);

}  // namespace qvortex
