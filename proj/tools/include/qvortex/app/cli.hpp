#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qvortex::app {

enum ExitCode : int { Ok = 0, ConfigFailure = 1, IoFailure = 2, NumericalFailure = 3 };

/// Runs `qvortex <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qvortex::app
