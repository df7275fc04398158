#pragma once
// File formats: CSV grids and tables, PPM heatmaps, SVG quivers with
// streamlines. All numbers are printed with fixed formats so that outputs are
// byte-for-byte reproducible.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qvortex/field_sampler.hpp"
#include "qvortex/vortex_finder.hpp"

namespace qvortex::app {

/// %.17g; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double v);

/// Writes bytes to path, creating parent directories. Throws IoError.
void write_file(const std::string& path, const std::string& bytes);

/// "# space,time,quantity", then "# <space>,<time>,<quantity>", the column
/// names, and one row per node in layout order (y fastest).
std::string grid_csv(Space space, double time, std::string_view quantity, const std::vector<std::string>& columns,
                     const GridSpec& spec, const std::function<void(std::size_t node, std::vector<double>& row)>& fill);

/// Plain table with a "# space,time,quantity" preamble like the grid files.
std::string table_csv(Space space, double time, std::string_view quantity, const std::vector<std::string>& columns,
                      const std::vector<std::vector<std::string>>& rows);

enum class Palette { Density, Phase };

/// Binary P6 image, one pixel per node, top row at ymax. Values are clipped
/// to [lo, hi]; non-finite values map to the low end.
std::string ppm_image(const GridSpec& spec, const std::vector<double>& values, double lo, double hi, Palette palette);

/// Log-density image clipped at (peak - 20, peak) natural-log units.
std::string log_density_ppm(const FieldGrid<DensitySample>& rho);

struct Streamline {
  std::vector<Vec2> points;
};

/// RK4 integration of the unit direction field of `field` from seed, forward
/// and backward, with the given step, until the path leaves bounds, hits an
/// undefined value, comes within `stop_radius` of a stop point, or reaches
/// max_steps per direction.
Streamline trace_streamline(const std::function<std::optional<Vec2>(double, double)>& field, Vec2 seed,
                            const GridSpec& bounds, double step, int max_steps, const std::vector<Vec2>& stop_points,
                            double stop_radius);

struct QuiverPlot {
  GridSpec window;   // plotted extent
  GridSpec arrows;   // arrow nodes
  std::vector<Vec2> vectors;
  std::vector<std::uint8_t> singular;
  std::vector<VortexDescriptor> vortices;
  std::vector<Streamline> streamlines;
  std::string title;
};

/// Arrow length 0.9 cell * min(1, |v| / median |v|); singular nodes drawn as
/// crosses, vortices as circles labelled with their charge.
std::string quiver_svg(const QuiverPlot& plot);

}  // namespace qvortex::app
