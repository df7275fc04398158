#include "qvortex/app/cli.hpp"

#include <algorithm>
#include <optional>

#include "CLI11.hpp"
#include "qvortex/app/commands.hpp"
#include "qvortex/app/config.hpp"
#include "qvortex/errors.hpp"

namespace qvortex::app {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App cli{"Photoelectron quantum-vortex fields, centers, moments and trajectories"};
  cli.name("qvortex");
  std::string command, config_path;
  Overrides o;
  cli.add_option("command", command, "field | centers | moments | trace")
      ->required()
      ->check(CLI::IsMember({"field", "centers", "moments", "trace"}));
  cli.add_option("--config", config_path, "JSON run configuration (defaults when omitted)");
  cli.add_option("--F0", o.F0, "peak field strength (overrides pulse.F0)");
  cli.add_option("--t", o.t, "evaluation time (overrides t/times)");
  cli.add_option("--space", o.space, "k | r");
  cli.add_option("--kind", o.kind, "exact | approx | quad");
  cli.add_option("--quantity", o.quantity, "density | phase | wavefunction | flux | velocity | cuts");
  cli.add_option("--out", o.out, "output directory (overrides output.dir)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    cli.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << cli.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "qvortex: " << e.what() << '\n';
    return ConfigFailure;
  }

  try {
    RunConfig cfg = config_path.empty() ? parse_config("", "<defaults>") : load_config(config_path);
    apply_overrides(cfg, o);
    if (command == "field") {
      cmd_field(cfg, out);
    } else if (command == "centers") {
      cmd_centers(cfg, out);
    } else if (command == "moments") {
      cmd_moments(cfg, out);
    } else {
      cmd_trace(cfg, out);
    }
  } catch (const ConfigError& e) {
    err << "qvortex: config error: " << e.what() << '\n';
    return ConfigFailure;
  } catch (const PreconditionError& e) {
    err << "qvortex: config error: " << e.what() << '\n';
    return ConfigFailure;
  } catch (const DegenerateZeroSet& e) {
    err << "qvortex: config error: " << e.what() << '\n';
    return ConfigFailure;
  } catch (const IoError& e) {
    err << "qvortex: I/O error: " << e.what() << '\n';
    return IoFailure;
  } catch (const NonConvergence& e) {
    err << "qvortex: no convergence: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return NumericalFailure;
  } catch (const TrackLoss& e) {
    err << "qvortex: no convergence: " << e.what() << '\n';
    return NumericalFailure;
  }
  return Ok;
}

}  // namespace qvortex::app
