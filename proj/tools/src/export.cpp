#include "qvortex/app/export.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qvortex/app/config.hpp"

namespace qvortex::app {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // also folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string preamble(Space space, double time, std::string_view quantity) {
  std::string s = "# space,time,quantity\n# ";
  s += to_string(space);
  s += ',';
  s += format_number(time);
  s += ',';
  s += quantity;
  s += '\n';
  return s;
}

std::string header(const std::vector<std::string>& columns) {
  std::string s;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) s += ',';
    s += columns[i];
  }
  return s + '\n';
}

using Rgb = std::array<unsigned char, 3>;

Rgb lerp(const Rgb& a, const Rgb& b, double f) {
  Rgb out;
  for (int c = 0; c < 3; ++c) out[c] = static_cast<unsigned char>(std::lround(a[c] + (b[c] - a[c]) * f));
  return out;
}

Rgb density_color(double f) {
  static const Rgb stops[] = {{0, 0, 4}, {40, 11, 84}, {101, 21, 110}, {159, 42, 99},
                              {212, 72, 66}, {245, 125, 21}, {250, 193, 39}, {252, 255, 164}};
  constexpr int n = sizeof stops / sizeof stops[0];
  f = std::clamp(f, 0.0, 1.0) * (n - 1);
  const int i = std::min(static_cast<int>(f), n - 2);
  return lerp(stops[i], stops[i + 1], f - i);
}

Rgb phase_color(double f) {
  // Hue wheel.
  const double h = std::clamp(f, 0.0, 1.0) * 6.0;
  const int sector = std::min(static_cast<int>(h), 5);
  const double x = h - sector;
  const unsigned char up = static_cast<unsigned char>(std::lround(255 * x));
  const unsigned char down = static_cast<unsigned char>(255 - up);
  switch (sector) {
    case 0: return {255, up, 0};
    case 1: return {down, 255, 0};
    case 2: return {0, 255, up};
    case 3: return {0, down, 255};
    case 4: return {up, 0, 255};
    default: return {255, 0, down};
  }
}

}  // namespace

void write_file(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path p(path);
  if (p.has_parent_path()) {
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + p.parent_path().string() + "': " + ec.message());
  }
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string grid_csv(Space space, double time, std::string_view quantity, const std::vector<std::string>& columns,
                     const GridSpec& spec, const std::function<void(std::size_t, std::vector<double>&)>& fill) {
  std::string s = preamble(space, time, quantity) + header(columns);
  s.reserve(s.size() + spec.size() * columns.size() * 22);
  std::vector<double> row;
  for (int i = 0; i < spec.nx; ++i) {
    for (int j = 0; j < spec.ny; ++j) {
      row.assign({spec.x(i), spec.y(j)});
      fill(spec.index(i, j), row);
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) s += ',';
        s += format_number(row[c]);
      }
      s += '\n';
    }
  }
  return s;
}

std::string table_csv(Space space, double time, std::string_view quantity, const std::vector<std::string>& columns,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string s = preamble(space, time, quantity) + header(columns);
  for (const auto& r : rows) s += header(r);
  return s;
}

std::string ppm_image(const GridSpec& spec, const std::vector<double>& values, double lo, double hi, Palette palette) {
  std::string s = "P6\n" + std::to_string(spec.nx) + " " + std::to_string(spec.ny) + "\n255\n";
  const double span = hi > lo ? hi - lo : 1.0;
  for (int row = 0; row < spec.ny; ++row) {
    const int j = spec.ny - 1 - row;
    for (int i = 0; i < spec.nx; ++i) {
      const double v = values[spec.index(i, j)];
      const double f = std::isfinite(v) ? (std::clamp(v, lo, hi) - lo) / span : 0.0;
      const Rgb c = palette == Palette::Density ? density_color(f) : phase_color(f);
      s.append(reinterpret_cast<const char*>(c.data()), 3);
    }
  }
  return s;
}

std::string log_density_ppm(const FieldGrid<DensitySample>& rho) {
  std::vector<double> v(rho.values.size());
  double peak = -INFINITY;
  for (std::size_t n = 0; n < v.size(); ++n) {
    v[n] = rho.values[n].log_rho;
    if (std::isfinite(v[n])) peak = std::max(peak, v[n]);
  }
  if (!std::isfinite(peak)) peak = 0.0;
  return ppm_image(rho.spec, v, peak - 20.0, peak, Palette::Density);
}

Streamline trace_streamline(const std::function<std::optional<Vec2>(double, double)>& field, Vec2 seed,
                            const GridSpec& bounds, double step, int max_steps, const std::vector<Vec2>& stop_points,
                            double stop_radius) {
  auto direction = [&](Vec2 p, double sign) -> std::optional<Vec2> {
    const auto v = field(p.u, p.v);
    if (!v) return std::nullopt;
    const double m = std::hypot(v->u, v->v);
    if (!(m > 0.0) || !std::isfinite(m)) return std::nullopt;
    return Vec2{sign * v->u / m, sign * v->v / m};
  };
  auto inside = [&](Vec2 p) {
    if (p.u < bounds.xmin || p.u > bounds.xmax || p.v < bounds.ymin || p.v > bounds.ymax) return false;
    return std::none_of(stop_points.begin(), stop_points.end(),
                        [&](const Vec2& s) { return std::hypot(p.u - s.u, p.v - s.v) < stop_radius; });
  };
  auto run = [&](double sign) {
    std::vector<Vec2> path;
    Vec2 p = seed;
    for (int n = 0; n < max_steps; ++n) {
      const auto k1 = direction(p, sign);
      if (!k1) break;
      const auto k2 = direction({p.u + 0.5 * step * k1->u, p.v + 0.5 * step * k1->v}, sign);
      if (!k2) break;
      const auto k3 = direction({p.u + 0.5 * step * k2->u, p.v + 0.5 * step * k2->v}, sign);
      if (!k3) break;
      const auto k4 = direction({p.u + step * k3->u, p.v + step * k3->v}, sign);
      if (!k4) break;
      const Vec2 next{p.u + step / 6.0 * (k1->u + 2.0 * k2->u + 2.0 * k3->u + k4->u),
                      p.v + step / 6.0 * (k1->v + 2.0 * k2->v + 2.0 * k3->v + k4->v)};
      if (!inside(next)) break;
      path.push_back(next);
      p = next;
      // Closed orbit around a vortex.
      if (path.size() > 8 && std::hypot(p.u - seed.u, p.v - seed.v) < 0.5 * step) break;
    }
    return path;
  };
  auto back = run(-1.0);
  auto fwd = run(+1.0);
  Streamline s;
  s.points.assign(back.rbegin(), back.rend());
  s.points.push_back(seed);
  s.points.insert(s.points.end(), fwd.begin(), fwd.end());
  return s;
}

std::string quiver_svg(const QuiverPlot& plot) {
  const auto& w = plot.window;
  const double width = w.xmax - w.xmin, height = w.ymax - w.ymin;
  const double px = 720.0;
  const double scale = px / std::max(width, height);
  auto X = [&](double u) { return short_number((u - w.xmin) * scale); };
  auto Y = [&](double v) { return short_number((w.ymax - v) * scale); };
  const double cell = std::min(plot.arrows.dx(), plot.arrows.dy());

  std::vector<double> mags;
  for (std::size_t n = 0; n < plot.vectors.size(); ++n) {
    if (!plot.singular[n]) mags.push_back(std::hypot(plot.vectors[n].u, plot.vectors[n].v));
  }
  double median = 1.0;
  if (!mags.empty()) {
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    median = mags[mags.size() / 2] > 0.0 ? mags[mags.size() / 2] : 1.0;
  }

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + short_number(width * scale) + "\" height=\"" +
       short_number(height * scale) + "\" viewBox=\"0 0 " + short_number(width * scale) + " " +
       short_number(height * scale) + "\">\n";
  s += "<title>" + plot.title + "</title>\n";
  s += "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">"
       "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"#222\"/></marker></defs>\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  s += "<g fill=\"none\" stroke=\"#3b75af\" stroke-width=\"1\">\n";
  for (const auto& line : plot.streamlines) {
    if (line.points.size() < 2) continue;
    s += "<polyline points=\"";
    for (std::size_t n = 0; n < line.points.size(); ++n) {
      if (n) s += ' ';
      s += X(line.points[n].u) + "," + Y(line.points[n].v);
    }
    s += "\"/>\n";
  }
  s += "</g>\n";

  s += "<g stroke=\"#222\" stroke-width=\"1.2\" marker-end=\"url(#head)\">\n";
  const auto& a = plot.arrows;
  for (int i = 0; i < a.nx; ++i) {
    for (int j = 0; j < a.ny; ++j) {
      const std::size_t n = a.index(i, j);
      if (plot.singular[n]) continue;
      const Vec2 v = plot.vectors[n];
      const double m = std::hypot(v.u, v.v);
      if (!(m > 0.0)) continue;
      const double len = 0.9 * cell * std::min(1.0, m / median);
      const double u0 = a.x(i) - 0.5 * len * v.u / m, v0 = a.y(j) - 0.5 * len * v.v / m;
      const double u1 = a.x(i) + 0.5 * len * v.u / m, v1 = a.y(j) + 0.5 * len * v.v / m;
      s += "<line x1=\"" + X(u0) + "\" y1=\"" + Y(v0) + "\" x2=\"" + X(u1) + "\" y2=\"" + Y(v1) + "\"/>\n";
    }
  }
  s += "</g>\n";

  s += "<g stroke=\"#c0392b\" stroke-width=\"1.5\">\n";
  const double r = 0.25 * cell * scale;
  for (int i = 0; i < a.nx; ++i) {
    for (int j = 0; j < a.ny; ++j) {
      if (!plot.singular[a.index(i, j)]) continue;
      const double cx = (a.x(i) - w.xmin) * scale, cy = (w.ymax - a.y(j)) * scale;
      s += "<path d=\"M" + short_number(cx - r) + "," + short_number(cy - r) + " L" + short_number(cx + r) + "," +
           short_number(cy + r) + " M" + short_number(cx - r) + "," + short_number(cy + r) + " L" +
           short_number(cx + r) + "," + short_number(cy - r) + "\"/>\n";
    }
  }
  s += "</g>\n";

  for (const auto& d : plot.vortices) {
    const std::string colour = d.charge > 0 ? "#c0392b" : "#2c3e90";
    s += "<circle cx=\"" + X(d.u) + "\" cy=\"" + Y(d.v) + "\" r=\"5\" fill=\"" + colour + "\"/>\n";
    s += "<text x=\"" + short_number((d.u - w.xmin) * scale + 7) + "\" y=\"" + short_number((w.ymax - d.v) * scale - 7) +
         "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + colour + "\">" + (d.charge > 0 ? "+" : "") +
         std::to_string(d.charge) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace qvortex::app
