#include "qvortex/vortex_finder.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "qvortex/errors.hpp"
#include "qvortex/parallel.hpp"

namespace qvortex {
namespace {

// Wrapped phase increment from a to b.
double phase_step(const Complex& a, const Complex& b) { return std::arg(b * std::conj(a)); }

void check_times(const std::vector<double>& times) {
  if (times.empty()) throw PreconditionError("trace_trajectory: empty time list");
  for (std::size_t n = 0; n < times.size(); ++n) {
    if (!(times[n] >= 4.0) || !std::isfinite(times[n])) {
      throw PreconditionError("trace_trajectory: all times must be >= T = 4");
    }
    if (n > 0 && !(times[n] > times[n - 1])) throw PreconditionError("trace_trajectory: times must be ascending");
  }
}

}  // namespace

std::array<VortexDescriptor, 2> momentum_centers_closed_form(double F0, double t) {
  if (!(F0 > 0.0)) {
    throw DegenerateZeroSet("momentum_centers_closed_form: F0 = 0 gives the nodal line kx = 0, not isolated vortices");
  }
  return {VortexDescriptor{Space::Momentum, 0.0, k0, +1, t, 0.0},
          VortexDescriptor{Space::Momentum, 0.0, -k0, -1, t, 0.0}};
}

std::array<VortexDescriptor, 2> position_centers(double F0, double t, CenterMode mode) {
  if (!(t >= 4.0)) throw PreconditionError("position_centers: requires t >= T = 4");
  if (!(F0 >= 0.0)) throw PreconditionError("position_centers: requires F0 >= 0");
  const double tau = t - 2.0;
  const double x0 = F0 * (6.0 * pi - 4.0) / (3.0 * pi * pi * pi);
  double y0 = k0 * tau;
  if (mode == CenterMode::ExactBracketRoot) {
    y0 = std::sqrt(k0_squared * tau * tau + (8.0 * pi - 4.0) / (pi * pi) - x0 * x0);
  }
  return {VortexDescriptor{Space::Position, x0, y0, +1, t, 0.0},
          VortexDescriptor{Space::Position, x0, -y0, -1, t, 0.0}};
}

std::vector<ZeroSeed> find_zeros(const FieldGrid<Complex>& grid) {
  const auto& s = grid.spec;
  std::vector<ZeroSeed> seeds;
  for (int i = 0; i + 1 < s.nx; ++i) {
    for (int j = 0; j + 1 < s.ny; ++j) {
      const Complex c[4] = {grid.at(i, j), grid.at(i + 1, j), grid.at(i + 1, j + 1), grid.at(i, j + 1)};
      if (c[0] == Complex{} || c[1] == Complex{} || c[2] == Complex{} || c[3] == Complex{}) continue;
      // A zero lying exactly on an edge (e.g. on a symmetry axis that is also
      // a node column) makes that edge's step +-pi. Such edges count +pi in
      // the direction of increasing index, so exactly one of the two cells
      // sharing the edge claims the zero.
      double total = 0.0;
      for (int e = 0; e < 4; ++e) {
        double step = phase_step(c[e], c[(e + 1) % 4]);
        if (std::abs(step) > pi * (1.0 - 1e-9)) step = e < 2 ? pi : -pi;
        total += step;
      }
      const int w = static_cast<int>(std::lround(total / (2.0 * pi)));
      if (w != 0) seeds.push_back({i, j, s.x(i) + 0.5 * s.dx(), s.y(j) + 0.5 * s.dy(), w});
    }
  }
  // Zeros landing exactly on a node (a window centered on a known center)
  // are invisible to the cells above; wind around the 8 neighbours instead.
  static constexpr int ring[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
  for (int i = 1; i + 1 < s.nx; ++i) {
    for (int j = 1; j + 1 < s.ny; ++j) {
      if (grid.at(i, j) != Complex{}) continue;
      double total = 0.0;
      bool defined = true;
      for (int e = 0; e < 8 && defined; ++e) {
        const Complex a = grid.at(i + ring[e][0], j + ring[e][1]);
        const Complex b = grid.at(i + ring[(e + 1) % 8][0], j + ring[(e + 1) % 8][1]);
        defined = a != Complex{} && b != Complex{};
        total += phase_step(a, b);
      }
      const int w = static_cast<int>(std::lround(total / (2.0 * pi)));
      if (defined && w != 0) seeds.push_back({i, j, s.x(i), s.y(j), w});
    }
  }
  return seeds;
}

int winding_number(const Wavefunction& psi, double cu, double cv, double radius, int points) {
  if (points < 3 || !(radius > 0.0)) throw PreconditionError("winding_number: requires >= 3 points and radius > 0");
  auto at = [&](double a) { return psi.value(cu + radius * std::cos(a), cv + radius * std::sin(a)); };
  // Arcs whose phase step exceeds pi/4 are bisected, so strongly anisotropic
  // zeros are not under-resolved by the initial sampling.
  auto arc = [&](auto&& self, double a0, double a1, Complex f0, Complex f1, int depth) -> double {
    const double step = phase_step(f0, f1);
    if (std::abs(step) <= 0.25 * pi || depth == 0) return step;
    const double am = 0.5 * (a0 + a1);
    const Complex fm = at(am);
    return self(self, a0, am, f0, fm, depth - 1) + self(self, am, a1, fm, f1, depth - 1);
  };
  double total = 0.0;
  const Complex first = at(0.0);
  Complex prev = first;
  for (int n = 1; n <= points; ++n) {
    const double a0 = 2.0 * pi * (n - 1) / points, a1 = 2.0 * pi * n / points;
    const Complex cur = n == points ? first : at(a1);
    total += arc(arc, a0, a1, prev, cur, 16);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

double zero_nondegeneracy(const Gradient& g) {
  const double det = std::real(g.du) * std::imag(g.dv) - std::real(g.dv) * std::imag(g.du);
  const double frob = std::norm(g.du) + std::norm(g.dv);
  return frob > 0.0 ? 2.0 * std::abs(det) / frob : 0.0;
}

double default_grid_step(Space space, double t) {
  if (space == Space::Momentum) return 8.0 / 399.0;
  return 6.0 * packet_width(t).a() / 399.0;
}

VortexDescriptor refine_zero(const Wavefunction& psi, double u0, double v0, const RefineOptions& options) {
  const double h = options.grid_step > 0.0 ? options.grid_step : default_grid_step(psi.space(), psi.time());
  double u = u0, v = v0;
  bool converged = false;
  for (int it = 0; it < options.max_iterations; ++it) {
    const Complex f = psi.value(u, v);
    if (f == Complex{}) {
      converged = true;
      break;
    }
    const Gradient g = psi.gradient(u, v);
    const double a = std::real(g.du), b = std::real(g.dv);
    const double c = std::imag(g.du), d = std::imag(g.dv);
    const double det = a * d - b * c;
    if (det == 0.0 || !std::isfinite(det)) {
      throw NonConvergence("refine_zero: singular Jacobian", std::abs(f), u, v);
    }
    double du = -(d * std::real(f) - b * std::imag(f)) / det;
    double dv = -(-c * std::real(f) + a * std::imag(f)) / det;
    const double len = std::hypot(du, dv);
    if (len > h) {
      const double scale = std::min(options.damping, options.trust_radius_steps * h / len);
      du *= scale;
      dv *= scale;
    }
    u += du;
    v += dv;
    if (!std::isfinite(u) || !std::isfinite(v)) throw NonConvergence("refine_zero: diverged", len, u0, v0);
    if (std::hypot(du, dv) <= options.step_tolerance * (1.0 + std::hypot(u, v))) {
      converged = true;
      break;
    }
  }
  const double residual = std::abs(psi.value(u, v));
  const Gradient g = psi.gradient(u, v);
  const double local_scale = std::sqrt(std::norm(g.du) + std::norm(g.dv)) * h;
  if (!converged || residual > options.residual_tolerance * std::max(1.0, local_scale)) {
    throw NonConvergence("refine_zero: no convergence within the iteration limit", residual, u, v);
  }
  const int charge = winding_number(psi, u, v, options.loop_radius_steps * h, options.loop_points);
  if (charge == 0) throw DegenerateZeroSet("refine_zero: zero has no phase winding");
  return {psi.space(), u, v, charge, psi.time(), residual};
}

std::vector<VortexDescriptor> scan_vortices(const Wavefunction& psi, const GridSpec& spec) {
  const auto grid = wavefunction_grid(psi, spec);
  const auto seeds = find_zeros(grid);
  const double h = std::min(spec.dx(), spec.dy());
  RefineOptions opts;
  opts.grid_step = h;

  std::vector<std::optional<VortexDescriptor>> refined(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t n) {
    const auto& s = seeds[n];
    try {
      auto d = refine_zero(psi, s.u, s.v, opts);
      if (std::hypot(d.u - s.u, d.v - s.v) > 3.0 * h) return;
      if (d.u < spec.xmin || d.u > spec.xmax || d.v < spec.ymin || d.v > spec.ymax) return;
      if (zero_nondegeneracy(psi.gradient(d.u, d.v)) < 1e-6) return;
      refined[n] = d;
    } catch (const NonConvergence&) {
    } catch (const DegenerateZeroSet&) {
    }
  });

  std::vector<VortexDescriptor> out;
  for (const auto& r : refined) {
    if (!r) continue;
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const VortexDescriptor& o) {
      return std::hypot(o.u - r->u, o.v - r->v) < 0.5 * h;
    });
    if (!duplicate) out.push_back(*r);
  }
  std::sort(out.begin(), out.end(), [](const VortexDescriptor& a, const VortexDescriptor& b) {
    if (a.v != b.v) return a.v > b.v;
    return a.u < b.u;
  });
  return out;
}

std::vector<VortexDescriptor> trace_trajectory(const std::vector<double>& times, double F0, Representation rep) {
  check_times(times);
  std::vector<VortexDescriptor> out;
  std::array<std::pair<double, double>, 2> previous{};
  double previous_t = 0.0;
  for (std::size_t n = 0; n < times.size(); ++n) {
    const double t = times[n];
    const Wavefunction psi(rep, canonical_pulse(F0), t);
    std::array<std::pair<double, double>, 2> predicted{};
    double tolerance = 0.0;
    if (rep.space == Space::Momentum) {
      const auto cf = momentum_centers_closed_form(F0, t);
      for (int s = 0; s < 2; ++s) predicted[s] = n == 0 ? std::pair{cf[s].u, cf[s].v} : previous[s];
      tolerance = 0.5;
    } else {
      if (n == 0) {
        const auto cf = position_centers(F0, t, CenterMode::PaperApprox);
        for (int s = 0; s < 2; ++s) predicted[s] = {cf[s].u, cf[s].v};
      } else {
        const double drift = k0 * (t - previous_t);
        predicted[0] = {previous[0].first, previous[0].second + drift};
        predicted[1] = {previous[1].first, previous[1].second - drift};
      }
      tolerance = packet_width(t).a();
    }
    for (int s = 0; s < 2; ++s) {
      const auto d = refine_zero(psi, predicted[s].first, predicted[s].second);
      if (std::hypot(d.u - predicted[s].first, d.v - predicted[s].second) > tolerance) {
        throw TrackLoss("trace_trajectory: continuation jumped further than the packet width");
      }
      previous[s] = {d.u, d.v};
      out.push_back(d);
    }
    previous_t = t;
  }
  return out;
}

double solenoidal_radius(const Wavefunction& psi, double cu, double cv, double step, double max_radius) {
  if (!(step > 0.0) || !(max_radius >= step)) throw PreconditionError("solenoidal_radius: invalid step or radius");
  constexpr int samples = 64;
  double accepted = 0.0;
  for (int m = 1; m * step <= max_radius * (1.0 + 1e-12); ++m) {
    const double r = m * step;
    int forward = 0, backward = 0;
    for (int n = 0; n < samples; ++n) {
      const double a = 2.0 * pi * n / samples;
      const double ct = std::cos(a), st = std::sin(a);
      Vec2 vel;
      try {
        vel = velocity_field(psi, cu + r * ct, cv + r * st);
      } catch (const SingularNode&) {
        return accepted;
      }
      const double tangential = -vel.u * st + vel.v * ct;
      if (tangential > 0.0) ++forward;
      if (tangential < 0.0) ++backward;
    }
    if (forward != samples && backward != samples) break;
    accepted = r;
  }
  return accepted;
}

}  // namespace qvortex
