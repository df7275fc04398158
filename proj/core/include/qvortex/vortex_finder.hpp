#pragma once

// Vortex localization: closed-form centers, plaquette zero scan, Newton
// refinement with winding-number charges, and time tracking.
//
// Charge convention: +1 means the phase increases counterclockwise around the
// center in standard (u right, v up) axes, i.e. the velocity circulates
// counterclockwise.

#include <array>
#include <vector>

#include "qvortex/field_sampler.hpp"
#include "qvortex/wavefunction.hpp"

namespace qvortex {

struct VortexDescriptor {
  Space space = Space::Momentum;
  double u = 0.0;
  double v = 0.0;
  int charge = 0;
  double time = 0.0;
  double residual = 0.0;  // |psi| at the center
};

/// (0, +k0) with charge +1 and (0, -k0) with charge -1. Throws
/// DegenerateZeroSet for F0 = 0, where the zero set is the line kx = 0.
std::array<VortexDescriptor, 2> momentum_centers_closed_form(double F0, double t = 5.0);

enum class CenterMode { PaperApprox, ExactBracketRoot };

/// Upper then lower coordinate-space center. x0 = F0 (6 pi - 4)/(3 pi^3) in
/// both modes; y0 = +-k0 tau (PaperApprox) or
/// +-sqrt(k0^2 tau^2 + (8 pi - 4)/pi^2 - x0^2) (ExactBracketRoot).
std::array<VortexDescriptor, 2> position_centers(double F0, double t, CenterMode mode);

/// Plaquette (or zero node) whose discrete phase winding is +-2 pi.
struct ZeroSeed {
  int i = 0;  // lower-left node (or the zero node itself)
  int j = 0;
  double u = 0.0;  // cell center (or node)
  double v = 0.0;
  int winding = 0;
};

/// Every cell with nonzero discrete winding, scanned in (i, j) order, then
/// every interior node where psi is exactly zero and its 8-neighbour ring
/// winds (u, v is then the node itself).
/// Cells straddling a nodal line (a sign change of a real factor, where the
/// phase jumps by exactly pi) may also wind; scan_vortices filters those.
std::vector<ZeroSeed> find_zeros(const FieldGrid<Complex>& grid);

/// Phase winding of psi along a circle of the given radius, starting from n
/// samples and bisecting arcs with phase steps above pi/4.
int winding_number(const Wavefunction& psi, double cu, double cv, double radius, int points = 16);

/// 2|det J| / |J|_F^2 of the real Jacobian d(Re psi, Im psi)/d(u, v):
/// 1 for an isotropic vortex, 0 on a nodal line.
double zero_nondegeneracy(const Gradient& g);

/// Grid step of the default 400-node window of the given space and time.
double default_grid_step(Space space, double t);

struct RefineOptions {
  double grid_step = 0.0;  // <= 0 selects default_grid_step
  int max_iterations = 50;
  double damping = 0.8;     // applied to steps longer than one grid cell
  double trust_radius_steps = 2.0;  // damped steps are also capped at this many cells
  double step_tolerance = 1e-13;
  double residual_tolerance = 1e-10;
  int loop_points = 16;
  double loop_radius_steps = 2.0;
};

/// Newton iteration on (Re psi, Im psi) with the analytic Jacobian. Throws
/// NonConvergence (with the last iterate) after max_iterations, and
/// DegenerateZeroSet when the converged zero has zero winding.
VortexDescriptor refine_zero(const Wavefunction& psi, double u0, double v0, const RefineOptions& options = {});

/// Plaquette scan, refinement of each seed, rejection of nodal-line artifacts
/// (nondegeneracy below 1e-6, zero winding, or refinement leaving the seed's
/// neighbourhood) and de-duplication. Sorted by (v descending, u ascending).
std::vector<VortexDescriptor> scan_vortices(const Wavefunction& psi, const GridSpec& spec);

/// Refined centers of both vortices at each time (upper then lower per time).
/// Position space predicts each step by drifting with the momentum-space
/// center velocity (0, +-k0); a refined center further than a(tau) from the
/// prediction raises TrackLoss.
std::vector<VortexDescriptor> trace_trajectory(const std::vector<double>& times, double F0, Representation rep);

/// Largest multiple of `step` (up to max_radius) such that on every circle of
/// that radius around the center the tangential velocity has one sign at all
/// 64 samples, i.e. the flow encircles the center.
double solenoidal_radius(const Wavefunction& psi, double cu, double cv, double step, double max_radius);

}  // namespace qvortex
