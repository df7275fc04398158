#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qvortex/app/config.hpp"

namespace qvortex::app {

/// Every command writes its files under each panel's output directory and
/// prints one line per file to `log`; it returns the written paths in order.
std::vector<std::string> cmd_field(const RunConfig& cfg, std::ostream& log);
std::vector<std::string> cmd_centers(const RunConfig& cfg, std::ostream& log);
std::vector<std::string> cmd_moments(const RunConfig& cfg, std::ostream& log);
std::vector<std::string> cmd_trace(const RunConfig& cfg, std::ostream& log);

/// <dir>/<prefix>[_<panel>][_t<time>]_<what>.<ext>
std::string output_path(const Panel& p, const std::string& what, const std::string& ext, const double* time);

/// Index of the grid node nearest to (u, v).
std::size_t nearest_node(const GridSpec& spec, double u, double v);

}  // namespace qvortex::app
