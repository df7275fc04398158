#include "qvortex/field_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qvortex/errors.hpp"
#include "qvortex/parallel.hpp"

namespace qvortex {

void GridSpec::validate() const {
  if (!(xmax > xmin) || !(ymax > ymin)) throw PreconditionError("grid: requires xmax > xmin and ymax > ymin");
  if (nx < 2 || ny < 2) throw PreconditionError("grid: nx and ny must be >= 2");
  if (!std::isfinite(xmin + xmax + ymin + ymax)) throw PreconditionError("grid: bounds must be finite");
}

GridSpec window(double cu, double cv, double half_width, int n) {
  return {cu - half_width, cu + half_width, cv - half_width, cv + half_width, n, n};
}

namespace {

template <class T>
FieldGrid<T> empty_like(const Wavefunction& psi, const GridSpec& spec) {
  spec.validate();
  FieldGrid<T> g;
  g.spec = spec;
  g.space = psi.space();
  g.time = psi.time();
  g.values.resize(spec.size());
  g.singular.assign(spec.size(), 0);
  return g;
}

template <class T, class F>
void fill(FieldGrid<T>& g, F&& node) {
  const auto& s = g.spec;
  parallel_for(s.size(), [&](std::size_t n) {
    const int i = static_cast<int>(n / s.ny);
    const int j = static_cast<int>(n % s.ny);
    g.values[n] = node(s.x(i), s.y(j));
  });
}

Vec2 flux_from(const Complex& value, const Gradient& g) {
  const Complex c = std::conj(value);
  return {std::imag(c * g.du), std::imag(c * g.dv)};
}

}  // namespace

FieldGrid<Complex> wavefunction_grid(const Wavefunction& psi, const GridSpec& spec) {
  auto g = empty_like<Complex>(psi, spec);
  fill(g, [&](double u, double v) { return psi.value(u, v); });
  return g;
}

FieldGrid<DensitySample> density_from(const FieldGrid<Complex>& values) {
  FieldGrid<DensitySample> g;
  g.spec = values.spec;
  g.space = values.space;
  g.time = values.time;
  g.values.resize(values.values.size());
  g.singular.assign(values.values.size(), 0);
  for (std::size_t n = 0; n < values.values.size(); ++n) {
    const double m = std::abs(values.values[n]);
    g.values[n] = {m * m, 2.0 * std::log(m)};
    if (m == 0.0) g.singular[n] = 1;
  }
  return g;
}

FieldGrid<DensitySample> density_grid(const Wavefunction& psi, const GridSpec& spec) {
  auto g = empty_like<DensitySample>(psi, spec);
  fill(g, [&](double u, double v) {
    const double log_mod = psi.log_modulus(u, v);
    return DensitySample{std::exp(2.0 * log_mod), 2.0 * log_mod};
  });
  for (std::size_t n = 0; n < g.values.size(); ++n) {
    if (g.values[n].rho == 0.0) g.singular[n] = 1;
  }
  return g;
}

FieldGrid<double> phase_from(const FieldGrid<Complex>& values) {
  FieldGrid<double> g;
  g.spec = values.spec;
  g.space = values.space;
  g.time = values.time;
  g.values.resize(values.values.size());
  g.singular.assign(values.values.size(), 0);
  for (std::size_t n = 0; n < values.values.size(); ++n) {
    g.values[n] = std::arg(values.values[n]);
    if (values.values[n] == Complex{}) g.singular[n] = 1;
  }
  return g;
}

FieldGrid<double> phase_grid(const Wavefunction& psi, const GridSpec& spec) {
  return phase_from(wavefunction_grid(psi, spec));
}

Gradient wavefunction_gradient(const Wavefunction& psi, double u, double v) { return psi.gradient(u, v); }

Gradient wavefunction_gradient_central(const Wavefunction& psi, double u, double v, double h) {
  return psi.gradient_central(u, v, h);
}

Vec2 symmetric_flux(const Wavefunction& psi, double u, double v) {
  return flux_from(psi.value(u, v), psi.gradient(u, v));
}

Vec2 velocity_field(const Wavefunction& psi, double u, double v, double density_floor) {
  const Complex value = psi.value(u, v);
  const double rho = std::norm(value);
  if (!(rho > density_floor)) throw SingularNode("velocity_field: density at or below the floor (vortex core)");
  const Vec2 j = flux_from(value, psi.gradient(u, v));
  return {j.u / rho, j.v / rho};
}

FieldGrid<Vec2> flux_grid(const Wavefunction& psi, const GridSpec& spec) {
  auto g = empty_like<Vec2>(psi, spec);
  fill(g, [&](double u, double v) { return symmetric_flux(psi, u, v); });
  return g;
}

FieldGrid<Vec2> velocity_grid(const Wavefunction& psi, const GridSpec& spec, double relative_floor) {
  auto g = empty_like<Vec2>(psi, spec);
  std::vector<double> rho(spec.size());
  const auto& s = g.spec;
  parallel_for(s.size(), [&](std::size_t n) {
    const double u = s.x(static_cast<int>(n / s.ny));
    const double v = s.y(static_cast<int>(n % s.ny));
    const Complex value = psi.value(u, v);
    rho[n] = std::norm(value);
    const Vec2 j = flux_from(value, psi.gradient(u, v));
    g.values[n] = rho[n] > 0.0 ? Vec2{j.u / rho[n], j.v / rho[n]} : Vec2{};
  });
  const double peak = *std::max_element(rho.begin(), rho.end());
  const double floor = relative_floor * peak;
  for (std::size_t n = 0; n < rho.size(); ++n) {
    if (!(rho[n] > floor)) {
      g.singular[n] = 1;
      g.values[n] = {};
    }
  }
  return g;
}

}  // namespace qvortex
