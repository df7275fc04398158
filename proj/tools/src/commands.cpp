#include "qvortex/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "qvortex/app/export.hpp"
#include "qvortex/errors.hpp"
#include "qvortex/moments.hpp"
#include "qvortex/position_wave.hpp"

namespace qvortex::app {
namespace {

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

Wavefunction make_psi(const Panel& p, double t) { return Wavefunction(p.rep, p.pulse, t, p.quadrature); }

class Writer {
public:
  Writer(std::ostream& log, std::vector<std::string>& files) : log_(log), files_(files) {}
  void operator()(const std::string& path, const std::string& bytes) {
    write_file(path, bytes);
    files_.push_back(path);
    log_ << "wrote " << path << '\n';
  }

private:
  std::ostream& log_;
  std::vector<std::string>& files_;
};

// Flag column: vortex charge at the node nearest each validated vortex, 2 at
// any other singular node, 0 elsewhere.
std::vector<double> node_flags(const GridSpec& spec, const std::vector<std::uint8_t>& singular,
                               const std::vector<VortexDescriptor>& vortices) {
  std::vector<double> flags(spec.size(), 0.0);
  for (std::size_t n = 0; n < singular.size(); ++n) {
    if (singular[n]) flags[n] = 2.0;
  }
  for (const auto& d : vortices) flags[nearest_node(spec, d.u, d.v)] = d.charge;
  return flags;
}

std::vector<VortexDescriptor> vortices_in(const Wavefunction& psi, const GridSpec& spec) {
  return scan_vortices(psi, spec);
}

void velocity_svg(const Panel& p, const Wavefunction& psi, const GridSpec& spec,
                  const std::vector<VortexDescriptor>& vortices, bool flux, Writer& write, double t) {
  const auto& q = p.quiver;
  const double cx = (spec.xmax - spec.xmin) / q.nx, cy = (spec.ymax - spec.ymin) / q.ny;
  QuiverPlot plot;
  plot.window = spec;
  plot.arrows = {spec.xmin + 0.5 * cx, spec.xmax - 0.5 * cx, spec.ymin + 0.5 * cy, spec.ymax - 0.5 * cy, q.nx, q.ny};
  plot.vortices = vortices;
  plot.title = std::string(flux ? "flux" : "velocity") + " " + std::string(to_string(p.rep.space)) + " t=" + time_tag(t) +
               " F0=" + time_tag(p.pulse.F0);
  const std::size_t n = plot.arrows.size();
  plot.vectors.assign(n, Vec2{});
  plot.singular.assign(n, 0);
  for (int i = 0; i < q.nx; ++i) {
    for (int j = 0; j < q.ny; ++j) {
      const std::size_t m = plot.arrows.index(i, j);
      try {
        plot.vectors[m] = flux ? symmetric_flux(psi, plot.arrows.x(i), plot.arrows.y(j))
                               : velocity_field(psi, plot.arrows.x(i), plot.arrows.y(j));
      } catch (const SingularNode&) {
        plot.singular[m] = 1;
      }
    }
  }

  auto field = [&](double u, double v) -> std::optional<Vec2> {
    try {
      return velocity_field(psi, u, v);
    } catch (const SingularNode&) {
      return std::nullopt;
    }
  };
  const double cell = std::min(cx, cy);
  std::vector<Vec2> stops;
  for (const auto& d : vortices) stops.push_back({d.u, d.v});
  std::vector<Vec2> seeds;
  const double half = 0.5 * std::min(spec.xmax - spec.xmin, spec.ymax - spec.ymin);
  for (const auto& d : vortices) {
    // Alternate sides so the flow is shown on both flanks of the core.
    const int per_side = (q.streamlines + 1) / 2;
    for (int m = 0; m < q.streamlines; ++m) {
      const double offset = half * (m / 2 + 1) / (per_side + 1);
      seeds.push_back({d.u + (m % 2 == 0 ? offset : -offset), d.v});
    }
  }
  if (vortices.empty()) {
    for (int m = 1; m <= q.streamlines; ++m) {
      seeds.push_back({0.5 * (spec.xmin + spec.xmax), spec.ymin + (spec.ymax - spec.ymin) * m / (q.streamlines + 1)});
    }
  }
  for (const auto& s : seeds) {
    plot.streamlines.push_back(trace_streamline(field, s, spec, 0.25 * cell, 2000, stops, 0.5 * cell));
  }
  write(output_path(p, flux ? "flux" : "velocity", "svg", &t), quiver_svg(plot));
}

void field_panel(const Panel& p, double t, Writer& write, std::ostream& log) {
  const Wavefunction psi = make_psi(p, t);
  const GridSpec spec = resolve_grid(p, t);
  spec.validate();
  const Space space = p.rep.space;
  const std::string qname(to_string(p.quantity));
  const std::string label = (p.name.empty() ? std::string() : p.name + " ") + "t=" + time_tag(t);

  switch (p.quantity) {
    case Quantity::Density: {
      const auto rho = density_grid(psi, spec);
      const auto vortices = vortices_in(psi, spec);
      const auto flags = node_flags(spec, rho.singular, vortices);
      log << label << ": " << vortices.size() << " density zeros flagged\n";
      if (p.output.csv) {
        write(output_path(p, qname, "csv", &t),
              grid_csv(space, t, qname, {"u", "v", "rho", "log_rho", "flag"}, spec, [&](std::size_t n, auto& row) {
                row.insert(row.end(), {rho.values[n].rho, rho.values[n].log_rho, flags[n]});
              }));
      }
      if (p.output.ppm) write(output_path(p, qname, "ppm", &t), log_density_ppm(rho));
      break;
    }
    case Quantity::Phase:
    case Quantity::Wavefunction: {
      const auto wf = wavefunction_grid(psi, spec);
      const auto ph = phase_from(wf);
      const auto vortices = vortices_in(psi, spec);
      const auto flags = node_flags(spec, ph.singular, vortices);
      const bool phase = p.quantity == Quantity::Phase;
      if (p.output.csv) {
        const std::vector<std::string> cols =
            phase ? std::vector<std::string>{"u", "v", "phase", "flag"} : std::vector<std::string>{"u", "v", "re", "im", "flag"};
        write(output_path(p, qname, "csv", &t), grid_csv(space, t, qname, cols, spec, [&](std::size_t n, auto& row) {
                if (phase) {
                  row.insert(row.end(), {ph.values[n], flags[n]});
                } else {
                  row.insert(row.end(), {wf.values[n].real(), wf.values[n].imag(), flags[n]});
                }
              }));
      }
      if (p.output.ppm) write(output_path(p, "phase", "ppm", &t), ppm_image(spec, ph.values, -pi, pi, Palette::Phase));
      break;
    }
    case Quantity::Flux:
    case Quantity::Velocity: {
      const bool flux = p.quantity == Quantity::Flux;
      const auto g = flux ? flux_grid(psi, spec) : velocity_grid(psi, spec);
      const auto vortices = vortices_in(psi, spec);
      const auto flags = node_flags(spec, g.singular, vortices);
      if (p.output.csv) {
        const std::vector<std::string> cols = flux ? std::vector<std::string>{"u", "v", "j_u", "j_v", "flag"}
                                                   : std::vector<std::string>{"u", "v", "v_u", "v_v", "flag"};
        write(output_path(p, qname, "csv", &t), grid_csv(space, t, qname, cols, spec, [&](std::size_t n, auto& row) {
                row.insert(row.end(), {g.values[n].u, g.values[n].v, flags[n]});
              }));
      }
      if (p.output.svg) velocity_svg(p, psi, spec, vortices, flux, write, t);
      break;
    }
    case Quantity::Cuts: {
      const auto c = position_centers(p.pulse.F0, t, p.center_mode)[0];
      const double half = p.grid.half_width > 0.0 ? p.grid.half_width : packet_width(t).a();
      const int n = p.grid.n;
      std::vector<std::vector<std::string>> rows;
      for (int i = 0; i < n; ++i) {
        const double s = -half + 2.0 * half * i / (n - 1);
        rows.push_back({format_number(s), format_number(std::abs(psi.value(c.u + s, c.v))),
                        format_number(std::abs(psi.value(c.u, c.v + s)))});
      }
      if (p.output.csv) write(output_path(p, qname, "csv", &t), table_csv(space, t, qname, {"s", "b_x", "b_y"}, rows));
      break;
    }
  }
}

std::vector<std::string> descriptor_row(const std::string& method, const VortexDescriptor& d) {
  return {method, format_number(d.u), format_number(d.v), std::to_string(d.charge), format_number(d.residual)};
}

}  // namespace

std::string output_path(const Panel& p, const std::string& what, const std::string& ext, const double* time) {
  std::string name = p.output.prefix;
  if (!p.name.empty()) name += "_" + p.name;
  if (time) name += "_t" + time_tag(*time);
  name += "_" + what + "." + ext;
  return (std::filesystem::path(p.output.dir) / name).string();
}

std::size_t nearest_node(const GridSpec& spec, double u, double v) {
  const int i = std::clamp(static_cast<int>(std::lround((u - spec.xmin) / spec.dx())), 0, spec.nx - 1);
  const int j = std::clamp(static_cast<int>(std::lround((v - spec.ymin) / spec.dy())), 0, spec.ny - 1);
  return spec.index(i, j);
}

std::vector<std::string> cmd_field(const RunConfig& cfg, std::ostream& log) {
  std::vector<std::string> files;
  Writer write(log, files);
  for (const auto& p : cfg.panels) {
    for (double t : p.times) field_panel(p, t, write, log);
  }
  return files;
}

std::vector<std::string> cmd_centers(const RunConfig& cfg, std::ostream& log) {
  std::vector<std::string> files;
  Writer write(log, files);
  for (const auto& p : cfg.panels) {
    for (double t : p.times) {
      const Wavefunction psi = make_psi(p, t);
      std::vector<std::vector<std::string>> rows;
      std::vector<VortexDescriptor> refined;
      if (p.rep.space == Space::Momentum) {
        for (const auto& d : momentum_centers_closed_form(p.pulse.F0, t)) rows.push_back(descriptor_row("closed_form", d));
        refined = scan_vortices(psi, resolve_grid(p, t));
      } else {
        for (const auto& d : position_centers(p.pulse.F0, t, CenterMode::PaperApprox)) {
          rows.push_back(descriptor_row("leading_order", d));
        }
        for (const auto& d : position_centers(p.pulse.F0, t, CenterMode::ExactBracketRoot)) {
          rows.push_back(descriptor_row("exact_bracket", d));
        }
        for (const auto& d : position_centers(p.pulse.F0, t, p.center_mode)) refined.push_back(refine_zero(psi, d.u, d.v));
      }
      for (const auto& d : refined) {
        rows.push_back(descriptor_row("refined", d));
        char buf[128];
        std::snprintf(buf, sizeof buf, "%s t=%s: (%.3f, %.3f) charge %+d\n", std::string(to_string(p.rep.space)).c_str(),
                      time_tag(t).c_str(), std::abs(d.u) < 5e-4 ? 0.0 : d.u, d.v, d.charge);
        log << buf;
      }
      write(output_path(p, "centers", "csv", &t),
            table_csv(p.rep.space, t, "centers", {"method", "u", "v", "charge", "residual"}, rows));
    }
  }
  return files;
}

std::vector<std::string> cmd_moments(const RunConfig& cfg, std::ostream& log) {
  std::vector<std::string> files;
  Writer write(log, files);
  auto row = [](const std::string& method, const MomentReport& m) {
    return std::vector<std::string>{method,
                                    format_number(m.mean_u),
                                    format_number(m.mean_v),
                                    format_number(m.var_u),
                                    format_number(m.var_v),
                                    format_number(m.norm)};
  };
  for (const auto& p : cfg.panels) {
    for (double t : p.times) {
      std::vector<std::vector<std::string>> rows;
      MomentReport numeric, closed;
      if (p.rep.space == Space::Momentum) {
        numeric = polar_moments(make_psi(p, t), p.quadrature);
        const auto [xx, yy] = momentum_dispersion_closed_form(p.pulse.F0);
        closed.var_u = xx;
        closed.var_v = yy;
        closed.norm = 1.0;
        closed.method = MomentMethod::ClosedFormApprox;
      } else {
        numeric = position_moments(t, p.pulse.F0, PositionMomentMode::Numeric, p.quadrature);
        closed = position_moments(t, p.pulse.F0, PositionMomentMode::ClosedForm);
      }
      rows.push_back(row(std::string("numeric_") + std::string(to_string(p.rep.kind)), numeric));
      rows.push_back(row("closed_form", closed));
      rows.push_back({"ratio", "nan", "nan", format_number(numeric.var_u / closed.var_u),
                      format_number(numeric.var_v / closed.var_v), "nan"});
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s t=%s: <u>=%.3e <v>=%.3e var=(%.6f, %.6f) closed=(%.6f, %.6f)\n",
                    std::string(to_string(p.rep.space)).c_str(), time_tag(t).c_str(), numeric.mean_u, numeric.mean_v,
                    numeric.var_u, numeric.var_v, closed.var_u, closed.var_v);
      log << buf;
      write(output_path(p, "moments", "csv", &t),
            table_csv(p.rep.space, t, "moments", {"method", "mean_u", "mean_v", "var_u", "var_v", "norm"}, rows));
    }
  }
  return files;
}

std::vector<std::string> cmd_trace(const RunConfig& cfg, std::ostream& log) {
  std::vector<std::string> files;
  Writer write(log, files);
  for (const auto& p : cfg.panels) {
    const auto track = trace_trajectory(p.times, p.pulse.F0, p.rep);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t n = 0; n < track.size(); ++n) {
      const auto& d = track[n];
      rows.push_back({format_number(d.time), n % 2 == 0 ? "upper" : "lower", format_number(d.u), format_number(d.v),
                      std::to_string(d.charge), format_number(d.residual)});
      char buf[128];
      std::snprintf(buf, sizeof buf, "t=%s %s: (%.3f, %.3f)\n", time_tag(d.time).c_str(), n % 2 == 0 ? "upper" : "lower",
                    d.u, d.v);
      log << buf;
    }
    write(output_path(p, "trace", "csv", nullptr),
          table_csv(p.rep.space, p.times.front(), "trace", {"time", "branch", "u", "v", "charge", "residual"}, rows));
  }
  return files;
}

}  // namespace qvortex::app
