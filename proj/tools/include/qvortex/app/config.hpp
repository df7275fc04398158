#pragma once
// Run configuration: one JSON document, optionally with a "panels" array whose
// entries are merged over the top-level keys. Unknown keys are rejected.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qvortex/field_sampler.hpp"
#include "qvortex/quadrature.hpp"
#include "qvortex/vortex_finder.hpp"
#include "qvortex/wavefunction.hpp"

namespace qvortex::app {

/// Invalid configuration; the message carries source, line and field path.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// File-system failure while reading the config or writing outputs.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Quantity { Density, Phase, Wavefunction, Flux, Velocity, Cuts };

std::string_view to_string(Quantity q) noexcept;

/// Either explicit bounds or a square window around an anchor:
/// "upper"/"lower" vortex, "origin", or a fixed point.
struct GridConfig {
  bool automatic = true;
  GridSpec explicit_spec{};
  std::string anchor = "default";  // resolved per space: k -> origin, r -> upper
  double anchor_u = 0.0;
  double anchor_v = 0.0;
  double half_width = 0.0;  // <= 0: 4 in momentum space, 3 a(tau) in position space
  int n = 400;
};

struct OutputConfig {
  std::string dir = "out";
  std::string prefix = "qvortex";
  bool csv = true;
  bool ppm = true;
  bool svg = true;
};

struct QuiverConfig {
  int nx = 24;
  int ny = 24;
  int streamlines = 12;
};

struct Panel {
  std::string name;  // empty for a single-panel run
  Representation rep{};
  Quantity quantity = Quantity::Density;
  PulseParams pulse = canonical_pulse(0.4);
  std::vector<double> times{5.0};
  GridConfig grid{};
  QuadratureSpec quadrature{};
  CenterMode center_mode = CenterMode::ExactBracketRoot;
  OutputConfig output{};
  QuiverConfig quiver{};
};

struct RunConfig {
  std::string source;  // file name used in diagnostics
  std::vector<Panel> panels;
};

/// Command-line values that take precedence over config keys in every panel.
struct Overrides {
  std::optional<double> F0;
  std::optional<double> t;
  std::optional<std::string> space;
  std::optional<std::string> kind;
  std::optional<std::string> quantity;
  std::optional<std::string> out;
};

/// Parses and validates a config document. An empty text means all defaults.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);
void apply_overrides(RunConfig& cfg, const Overrides& o);

/// Concrete grid of a panel at time t.
GridSpec resolve_grid(const Panel& p, double t);

}  // namespace qvortex::app
