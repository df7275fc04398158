#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qvortex/app/cli.hpp"
#include "qvortex/app/commands.hpp"
#include "qvortex/app/config.hpp"
#include "qvortex/app/export.hpp"
#include "qvortex/moments.hpp"

using namespace qvortex;
using namespace qvortex::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("qvortex_test_cli_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  return out;
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text, "cfg.json");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "run.json";
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("defaults") {
  const auto cfg = parse_config("");
  REQUIRE(cfg.panels.size() == 1);
  const auto& p = cfg.panels[0];
  CHECK(p.rep.space == Space::Momentum);
  CHECK(p.rep.kind == MomentumWavefunctionKind::ExactClosedForm);
  CHECK(p.quantity == Quantity::Density);
  CHECK(p.pulse.F0 == 0.4);
  CHECK(p.times == std::vector<double>{5.0});
  const auto g = resolve_grid(p, 5.0);
  CHECK(g.xmin == -4.0);
  CHECK(g.xmax == 4.0);
  CHECK(g.nx == 400);
  CHECK(g.ny == 400);
}

TEST_CASE("unknown keys carry line and field path") {
  auto msg = config_error("{\n  \"space\": \"k\",\n  \"grdi\": {}\n}\n");
  CHECK(msg.find("cfg.json:3") != std::string::npos);
  CHECK(msg.find("'grdi'") != std::string::npos);
  CHECK(msg.find("unknown key") != std::string::npos);

  msg = config_error(
      "{\n"
      "  \"panels\": [\n"
      "    {\"name\": \"a\"},\n"
      "    {\"name\": \"b\",\n"
      "     \"grid\": {\"n\": 10, \"nz\": 3}}\n"
      "  ]\n"
      "}\n");
  CHECK(msg.find("cfg.json:5") != std::string::npos);
  CHECK(msg.find("panels[1].grid.nz") != std::string::npos);

  msg = config_error("{\"pulse\": {\"F0\": 0.4, \"phase\": 1}}");
  CHECK(msg.find("pulse.phase") != std::string::npos);
}

TEST_CASE("invalid values") {
  CHECK(config_error("{\"t\": \"five\"}").find("field 't': expected a number") != std::string::npos);
  CHECK(config_error("{\"t\": 5, \"times\": [5]}").find("times") != std::string::npos);
  CHECK(config_error("{\"times\": []}").find("empty time list") != std::string::npos);
  CHECK_FALSE(config_error("{\"space\": \"r\", \"times\": [10, 5]}").empty());
  CHECK_FALSE(config_error("{\"t\": 3}").empty());  // closed forms need the pulse to be over
  CHECK_FALSE(config_error("{\"kind\": \"maybe\"}").empty());
  CHECK_FALSE(config_error("{\"grid\": {\"n\": 1}}").empty());
  CHECK_FALSE(config_error("{\"pulse\": {\"F0\": -1}}").empty());
  CHECK_FALSE(config_error("{\"pulse\": {\"omega\": 3}}").empty());  // closed forms are canonical-only
  CHECK(config_error("{\"kind\": \"quad\", \"pulse\": {\"omega\": 3}, \"grid\": {\"n\": 8}}").empty());
  CHECK_FALSE(config_error("{\"quantity\": \"cuts\"}").empty());  // cuts are position-space only
  CHECK_FALSE(config_error("{\"panels\": [{\"name\": \"a\"}, {\"name\": \"a\"}]}").empty());
  CHECK_FALSE(config_error("{\"panels\": [{\"name\": \"a b\"}]}").empty());
  CHECK_FALSE(config_error("[1, 2]").empty());

  const auto msg = config_error("{\n  \"t\": 5,,\n}");
  CHECK(msg.find("cfg.json:2:") != std::string::npos);
  CHECK(msg.find("invalid JSON") != std::string::npos);
}

TEST_CASE("panels inherit top-level keys") {
  const auto cfg = parse_config(
      "{\"space\": \"r\", \"pulse\": {\"F0\": 1.5}, \"times\": [5, 10], \"output\": {\"prefix\": \"x\"},"
      " \"panels\": [{\"name\": \"one\"}, {\"name\": \"two\", \"t\": 7, \"quantity\": \"phase\"}, {}]}");
  REQUIRE(cfg.panels.size() == 3);
  for (const auto& p : cfg.panels) {
    CHECK(p.rep.space == Space::Position);
    CHECK(p.pulse.F0 == 1.5);
    CHECK(p.output.prefix == "x");
  }
  CHECK(cfg.panels[0].times == std::vector<double>{5.0, 10.0});
  CHECK(cfg.panels[1].times == std::vector<double>{7.0});
  CHECK(cfg.panels[1].quantity == Quantity::Phase);
  CHECK(cfg.panels[2].name == "2");
}

TEST_CASE("flags override config keys") {
  auto cfg = parse_config("{\"space\": \"k\", \"t\": 6, \"pulse\": {\"F0\": 0.4}, \"output\": {\"dir\": \"a\"}}");
  Overrides o;
  o.F0 = 4.0;
  o.t = 10.0;
  o.space = "r";
  o.out = "b";
  apply_overrides(cfg, o);
  const auto& p = cfg.panels[0];
  CHECK(p.pulse.F0 == 4.0);
  CHECK(p.times == std::vector<double>{10.0});
  CHECK(p.rep.space == Space::Position);
  CHECK(p.output.dir == "b");

  Overrides bad;
  bad.t = 2.0;
  CHECK_THROWS_AS(apply_overrides(cfg, bad), ConfigError);
}

TEST_CASE("grid resolution") {
  auto cfg = parse_config("{\"space\": \"r\", \"grid\": {\"center\": \"lower\", \"n\": 11}}");
  const auto& p = cfg.panels[0];
  const auto g = resolve_grid(p, 5.0);
  const auto c = position_centers(0.4, 5.0, CenterMode::ExactBracketRoot)[1];
  CHECK(g.nx == 11);
  CHECK(0.5 * (g.xmin + g.xmax) == doctest::Approx(c.u));
  CHECK(0.5 * (g.ymin + g.ymax) == doctest::Approx(c.v));
  CHECK(0.5 * (g.xmax - g.xmin) == doctest::Approx(3.0 * packet_width(5.0).a()));

  cfg = parse_config("{\"grid\": {\"xmin\": -1, \"xmax\": 2, \"ymin\": 0, \"ymax\": 1, \"nx\": 4, \"ny\": 3}}");
  const auto e = resolve_grid(cfg.panels[0], 5.0);
  CHECK(e.xmin == -1.0);
  CHECK(e.xmax == 2.0);
  CHECK(e.ny == 3);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(HUGE_VAL) == "inf");
  CHECK(format_number(-HUGE_VAL) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
  for (double x : {pi, -1.0 / 3.0, 1e-300, 6.02214076e23}) CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("output naming") {
  Panel p;
  p.output.dir = "d";
  p.output.prefix = "f";
  const double t = 5.0;
  CHECK(fs::path(output_path(p, "density", "csv", &t)) == fs::path("d") / "f_t5_density.csv");
  p.name = "a";
  CHECK(fs::path(output_path(p, "trace", "csv", nullptr)) == fs::path("d") / "f_a_trace.csv");
}

TEST_CASE("grid CSV schema") {
  const auto dir = scratch("schema");
  const auto cfg = write_config(dir, "{\"grid\": {\"xmin\": -4, \"xmax\": 4, \"ymin\": -4, \"ymax\": 4, \"nx\": 81, \"ny\": 81},"
                                     " \"output\": {\"prefix\": \"s\", \"ppm\": false}}");
  const auto r = run_cli({"field", "--config", cfg.string(), "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto lines = lines_of(slurp(dir / "s_t5_density.csv"));
  REQUIRE(lines.size() == 3 + 81 * 81);
  CHECK(lines[0] == "# space,time,quantity");
  CHECK(lines[1] == "# k,5,density");
  CHECK(lines[2] == "u,v,rho,log_rho,flag");
  // y runs fastest
  CHECK(split(lines[3])[0] == "-4");
  CHECK(split(lines[3])[1] == "-4");
  CHECK(split(lines[4])[0] == "-4");
  CHECK(std::stod(split(lines[4])[1]) == doctest::Approx(-4.0 + 8.0 / 80.0).epsilon(1e-15));

  const std::regex seventeen(R"(-?\d\.\d{16}e[+-]\d+|-?\d+(\.\d+)?|-?\d+\.\d+e[+-]\d+|-?inf|nan)");
  int flagged = 0;
  for (std::size_t n = 3; n < lines.size(); ++n) {
    const auto f = split(lines[n]);
    REQUIRE(f.size() == 5);
    for (const auto& x : f) CHECK(std::regex_match(x, seventeen));
    const double rho = std::stod(f[2]);
    CHECK(rho >= 0.0);
    if (f[4] != "0") ++flagged;
  }
  // Two central vortices plus the four zeros on the outer ring.
  CHECK(flagged == 6);
  CHECK(r.out.find("6 density zeros flagged") != std::string::npos);
}

TEST_CASE("exit codes") {
  const auto dir = scratch("codes");
  CHECK(run_cli({"field", "--config", write_config(dir, "{\"bogus\": 1}").string()}).code == 1);
  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({"field", "--space", "x"}).code == 1);
  CHECK(run_cli({"field", "--t", "2"}).code == 1);
  CHECK(run_cli({"trace", "--config", write_config(dir, "{\"times\": []}").string()}).code == 1);
  CHECK(run_cli({"centers", "--F0", "0"}).code == 1);
  CHECK(run_cli({"field", "--config", (dir / "missing.json").string()}).code == 2);

  // An output directory that is a regular file cannot be created.
  const fs::path blocker = dir / "blocker";
  std::ofstream(blocker) << "x";
  const auto small = write_config(dir, "{\"grid\": {\"n\": 8}}");
  const auto io = run_cli({"field", "--config", small.string(), "--out", (blocker / "sub").string()});
  CHECK(io.code == 2);
  CHECK_FALSE(io.err.empty());

  const auto ok = run_cli({"field", "--config", small.string(), "--out", (dir / "ok").string()});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("wrote") != std::string::npos);
}

TEST_CASE("outputs are deterministic") {
  const auto dir = scratch("determinism");
  const auto cfg = write_config(dir,
                                "{\"space\": \"r\", \"panels\": ["
                                "{\"name\": \"d\", \"grid\": {\"center\": \"origin\", \"n\": 60}},"
                                "{\"name\": \"v\", \"quantity\": \"velocity\", \"grid\": {\"half_width\": 2, \"n\": 41}},"
                                "{\"name\": \"c\", \"quantity\": \"cuts\", \"grid\": {\"n\": 51}}]}");
  std::vector<std::string> first, second;
  for (const char* tag : {"a", "b"}) {
    const auto out = dir / tag;
    REQUIRE(run_cli({"field", "--config", cfg.string(), "--out", out.string()}).code == 0);
    REQUIRE(run_cli({"centers", "--config", cfg.string(), "--out", out.string()}).code == 0);
  }
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir / "a")) names.push_back(e.path().filename().string());
  CHECK(names.size() >= 8);
  for (const auto& n : names) {
    INFO(n);
    CHECK(slurp(dir / "a" / n) == slurp(dir / "b" / n));
  }
}

TEST_CASE("quiver arrows stay within the cell") {
  const auto dir = scratch("quiver");
  const auto cfg = write_config(dir,
                                "{\"space\": \"r\", \"quantity\": \"velocity\", \"grid\": {\"half_width\": 3, \"n\": 41},"
                                " \"quiver\": {\"nx\": 20, \"ny\": 20, \"streamlines\": 6}, \"output\": {\"prefix\": \"q\"}}");
  REQUIRE(run_cli({"field", "--config", cfg.string(), "--out", dir.string()}).code == 0);
  const std::string svg = slurp(dir / "q_t5_velocity.svg");
  const std::regex size_re("width=\"([0-9.]+)\"");
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, size_re));
  const double cell_px = std::stod(m[1]) / 20.0;

  const std::regex line_re(R"re(<line x1="([^"]+)" y1="([^"]+)" x2="([^"]+)" y2="([^"]+)")re");
  int arrows = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), line_re); it != std::sregex_iterator(); ++it) {
    const double len = std::hypot(std::stod((*it)[3]) - std::stod((*it)[1]), std::stod((*it)[4]) - std::stod((*it)[2]));
    CHECK(len <= 0.9 * cell_px + 1e-2);  // coordinates carry 6 digits
    ++arrows;
  }
  CHECK(arrows == 400);
  int polylines = 0;
  for (auto at = svg.find("<polyline"); at != std::string::npos; at = svg.find("<polyline", at + 1)) ++polylines;
  CHECK(polylines == 6);
  CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("streamlines") {
  const GridSpec box{-1.0, 1.0, -1.0, 1.0, 11, 11};
  auto uniform = [](double, double) -> std::optional<Vec2> { return Vec2{2.0, 0.0}; };
  const auto s = trace_streamline(uniform, {0.0, 0.5}, box, 0.01, 1000, {}, 0.0);
  REQUIRE(s.points.size() > 100);
  for (const auto& p : s.points) CHECK(p.v == doctest::Approx(0.5));
  CHECK(s.points.front().u == doctest::Approx(-1.0).epsilon(0.02));
  CHECK(s.points.back().u == doctest::Approx(1.0).epsilon(0.02));

  // A circular flow keeps its radius and stops once the orbit closes.
  auto swirl = [](double u, double v) -> std::optional<Vec2> { return Vec2{-v, u}; };
  const auto c = trace_streamline(swirl, {0.5, 0.0}, box, 0.01, 5000, {}, 0.0);
  REQUIRE(c.points.size() > 100);
  CHECK(c.points.size() < 2 * 400);
  for (const auto& p : c.points) CHECK(std::hypot(p.u, p.v) == doctest::Approx(0.5).epsilon(1e-6));

  // Undefined directions and stop points end the line.
  auto holed = [](double u, double) -> std::optional<Vec2> {
    if (u > 0.3) return std::nullopt;
    return Vec2{1.0, 0.0};
  };
  const auto h = trace_streamline(holed, {0.0, 0.0}, box, 0.01, 1000, {Vec2{-0.5, 0.0}}, 0.05);
  CHECK(h.points.front().u > -0.5);
  CHECK(h.points.back().u <= 0.3);
}

TEST_CASE("centers, moments and trace reports") {
  const auto dir = scratch("reports");
  auto r = run_cli({"centers", "--space", "r", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("(0.064, 7.049) charge +1") != std::string::npos);
  CHECK(r.out.find("(0.064, -7.049) charge -1") != std::string::npos);
  r = run_cli({"centers", "--space", "r", "--t", "10", "--out", dir.string()});
  CHECK(r.out.find("18.446") != std::string::npos);
  r = run_cli({"centers", "--out", dir.string()});
  CHECK(r.out.find("(0.000, 2.299) charge +1") != std::string::npos);
  const auto centers = slurp(dir / "qvortex_t5_centers.csv");
  CHECK(centers.find("closed_form,0,2.29851806762") != std::string::npos);
  CHECK(lines_of(centers)[2] == "method,u,v,charge,residual");

  r = run_cli({"moments", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto rows = lines_of(slurp(dir / "qvortex_t5_moments.csv"));
  REQUIRE(rows.size() == 6);
  const auto numeric = split(rows[3]);
  CHECK(numeric[0] == "numeric_exact");
  CHECK(std::abs(std::stod(numeric[1])) < 1e-8);
  CHECK(std::abs(std::stod(numeric[2])) < 1e-8);
  const auto ratio = split(rows[5]);
  CHECK(std::stod(ratio[3]) > 1.1);
  CHECK(std::stod(ratio[3]) < 1.3);

  const auto [xx, yy] = momentum_dispersion_closed_form(0.0);
  CHECK(xx == doctest::Approx(0.75 * pi).epsilon(1e-12));
  CHECK(yy == doctest::Approx(0.25 * pi).epsilon(1e-12));

  r = run_cli({"trace", "--config", write_config(dir, "{\"space\": \"r\", \"times\": [5, 10, 15]}").string(), "--out",
               dir.string()});
  REQUIRE(r.code == 0);
  const auto trace = lines_of(slurp(dir / "qvortex_trace.csv"));
  REQUIRE(trace.size() == 3 + 6);
  CHECK(trace[2] == "time,branch,u,v,charge,residual");
  CHECK(split(trace[3])[1] == "upper");
  CHECK(split(trace[4])[4] == "-1");
}
