#include "qvortex/app/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qvortex/position_wave.hpp"

namespace qvortex::app {

using nlohmann::json;

std::string_view to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::Density: return "density";
    case Quantity::Phase: return "phase";
    case Quantity::Wavefunction: return "wavefunction";
    case Quantity::Flux: return "flux";
    case Quantity::Velocity: return "velocity";
    case Quantity::Cuts: return "cuts";
  }
  return "?";
}

namespace {

// Character iterator that publishes how far the parser has read.
class TrackingIterator {
public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  TrackingIterator(const char* p, const char** cursor) : p_(p), cursor_(cursor) {}
  reference operator*() const { return *p_; }
  TrackingIterator& operator++() {
    ++p_;
    *cursor_ = p_;
    return *this;
  }
  TrackingIterator operator++(int) {
    auto old = *this;
    ++*this;
    return old;
  }
  bool operator==(const TrackingIterator& o) const { return p_ == o.p_; }
  bool operator!=(const TrackingIterator& o) const { return p_ != o.p_; }

private:
  const char* p_;
  const char** cursor_;
};

// SAX consumer recording the source line of every key and array element.
class PathRecorder {
public:
  PathRecorder(const std::string& text, const char** cursor) : text_(text), cursor_(cursor) {}

  std::map<std::string, int> lines;

  bool null() { return value(); }
  bool boolean(bool) { return value(); }
  bool number_integer(json::number_integer_t) { return value(); }
  bool number_unsigned(json::number_unsigned_t) { return value(); }
  bool number_float(json::number_float_t, const std::string&) { return value(); }
  bool string(std::string&) { return value(); }
  bool binary(json::binary_t&) { return value(); }
  bool start_object(std::size_t) {
    value();
    stack_.push_back({true, "", -1});
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) {
    value();
    stack_.push_back({false, "", -1});
    return true;
  }
  bool end_array() {
    stack_.pop_back();
    return true;
  }
  bool key(std::string& k) {
    stack_.back().key = k;
    lines.emplace(path(), line());
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) { return false; }

private:
  struct Frame {
    bool object;
    std::string key;
    int index;
  };

  bool value() {
    if (!stack_.empty() && !stack_.back().object) {
      ++stack_.back().index;
      lines.emplace(path(), line());
    }
    return true;
  }

  std::string path() const {
    std::string out;
    for (const auto& f : stack_) {
      if (f.object) {
        if (!out.empty()) out += '.';
        out += f.key;
      } else {
        out += '[' + std::to_string(f.index) + ']';
      }
    }
    return out;
  }

  int line() const {
    const auto offset = static_cast<std::size_t>(*cursor_ - text_.data());
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + std::min(offset, text_.size()), '\n'));
  }

  const std::string& text_;
  const char** cursor_;
  std::vector<Frame> stack_;
};

class Reader {
public:
  Reader(std::string source, std::map<std::string, int> lines) : source_(std::move(source)), lines_(std::move(lines)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    std::ostringstream os;
    os << source_;
    if (auto it = lines_.find(path); it != lines_.end()) os << ':' << it->second;
    os << ": field '" << path << "': " << message;
    throw ConfigError(os.str());
  }

  void expect_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) const {
    if (!obj.is_object()) fail(path, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : obj.items()) {
      if (!ok.count(k)) fail(join(path, k), "unknown key");
    }
  }

  double number(const json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "expected a finite number");
    return d;
  }

  int positive_int(const json& v, const std::string& path, int minimum = 1) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    const auto i = v.get<long long>();
    if (i < minimum || i > 100000) fail(path, "expected an integer in [" + std::to_string(minimum) + ", 100000]");
    return static_cast<int>(i);
  }

  bool boolean(const json& v, const std::string& path) const {
    if (!v.is_boolean()) fail(path, "expected true or false");
    return v.get<bool>();
  }

  std::string text(const json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  static std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

private:
  std::string source_;
  std::map<std::string, int> lines_;
};

Space parse_space(const std::string& s, const Reader& r, const std::string& path) {
  if (s == "k" || s == "momentum") return Space::Momentum;
  if (s == "r" || s == "position") return Space::Position;
  r.fail(path, "expected \"k\" or \"r\", got \"" + s + "\"");
}

MomentumWavefunctionKind parse_kind(const std::string& s, const Reader& r, const std::string& path) {
  if (s == "exact") return MomentumWavefunctionKind::ExactClosedForm;
  if (s == "approx") return MomentumWavefunctionKind::NearCenterApprox;
  if (s == "quad") return MomentumWavefunctionKind::GenericQuadrature;
  r.fail(path, "expected \"exact\", \"approx\" or \"quad\", got \"" + s + "\"");
}

Quantity parse_quantity(const std::string& s, const Reader& r, const std::string& path) {
  for (auto q : {Quantity::Density, Quantity::Phase, Quantity::Wavefunction, Quantity::Flux, Quantity::Velocity,
                 Quantity::Cuts}) {
    if (s == to_string(q)) return q;
  }
  r.fail(path, "unknown quantity \"" + s + "\"");
}

GridConfig parse_grid(const json& g, const Reader& r, const std::string& path) {
  r.expect_keys(g, path, {"xmin", "xmax", "ymin", "ymax", "nx", "ny", "center", "half_width", "n"});
  const bool has_bounds = g.contains("xmin") || g.contains("xmax") || g.contains("ymin") || g.contains("ymax") ||
                          g.contains("nx") || g.contains("ny");
  const bool has_window = g.contains("center") || g.contains("half_width") || g.contains("n");
  if (has_bounds && has_window) r.fail(path, "use either explicit bounds or center/half_width/n, not both");
  GridConfig out;
  if (has_bounds) {
    out.automatic = false;
    GridSpec s;
    for (const char* k : {"xmin", "xmax", "ymin", "ymax"}) {
      if (!g.contains(k)) r.fail(Reader::join(path, k), "missing bound");
    }
    s.xmin = r.number(g["xmin"], Reader::join(path, "xmin"));
    s.xmax = r.number(g["xmax"], Reader::join(path, "xmax"));
    s.ymin = r.number(g["ymin"], Reader::join(path, "ymin"));
    s.ymax = r.number(g["ymax"], Reader::join(path, "ymax"));
    if (g.contains("nx")) s.nx = r.positive_int(g["nx"], Reader::join(path, "nx"), 2);
    if (g.contains("ny")) s.ny = r.positive_int(g["ny"], Reader::join(path, "ny"), 2);
    if (!(s.xmax > s.xmin)) r.fail(Reader::join(path, "xmax"), "must exceed xmin");
    if (!(s.ymax > s.ymin)) r.fail(Reader::join(path, "ymax"), "must exceed ymin");
    out.explicit_spec = s;
    return out;
  }
  if (g.contains("center")) {
    const auto& c = g["center"];
    const std::string cp = Reader::join(path, "center");
    if (c.is_string()) {
      out.anchor = c.get<std::string>();
      if (out.anchor != "upper" && out.anchor != "lower" && out.anchor != "origin") {
        r.fail(cp, "expected \"upper\", \"lower\", \"origin\" or [u, v]");
      }
    } else if (c.is_array() && c.size() == 2) {
      out.anchor = "point";
      out.anchor_u = r.number(c[0], cp + "[0]");
      out.anchor_v = r.number(c[1], cp + "[1]");
    } else {
      r.fail(cp, "expected \"upper\", \"lower\", \"origin\" or [u, v]");
    }
  }
  if (g.contains("half_width")) {
    out.half_width = r.number(g["half_width"], Reader::join(path, "half_width"));
    if (!(out.half_width > 0.0)) r.fail(Reader::join(path, "half_width"), "must be > 0");
  }
  if (g.contains("n")) out.n = r.positive_int(g["n"], Reader::join(path, "n"), 2);
  return out;
}

// Applies the keys present in obj on top of base.
Panel parse_panel(const json& obj, Panel base, const Reader& r, const std::string& path, bool top_level) {
  if (top_level) {
    r.expect_keys(obj, path, {"description", "space", "kind", "quantity", "pulse", "t", "times", "grid", "quadrature",
                              "centers", "output", "quiver", "panels"});
  } else {
    r.expect_keys(obj, path, {"name", "description", "space", "kind", "quantity", "pulse", "t", "times", "grid",
                              "quadrature", "centers", "output", "quiver"});
  }
  auto at = [&](const char* k) { return Reader::join(path, k); };
  if (obj.contains("description")) r.text(obj["description"], at("description"));
  if (obj.contains("name")) {
    base.name = r.text(obj["name"], at("name"));
    const bool safe = !base.name.empty() && std::all_of(base.name.begin(), base.name.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
    if (!safe) r.fail(at("name"), "panel names must be non-empty [A-Za-z0-9_-]");
  }
  if (obj.contains("space")) base.rep.space = parse_space(r.text(obj["space"], at("space")), r, at("space"));
  if (obj.contains("kind")) base.rep.kind = parse_kind(r.text(obj["kind"], at("kind")), r, at("kind"));
  if (obj.contains("quantity")) {
    base.quantity = parse_quantity(r.text(obj["quantity"], at("quantity")), r, at("quantity"));
  }
  if (obj.contains("pulse")) {
    const auto& p = obj["pulse"];
    const std::string pp = at("pulse");
    r.expect_keys(p, pp, {"F0", "omega", "T", "alpha"});
    if (p.contains("F0")) base.pulse.F0 = r.number(p["F0"], pp + ".F0");
    if (p.contains("omega")) base.pulse.omega = r.number(p["omega"], pp + ".omega");
    if (p.contains("T")) base.pulse.T = r.number(p["T"], pp + ".T");
    if (p.contains("alpha")) base.pulse.alpha = r.number(p["alpha"], pp + ".alpha");
    if (base.pulse.F0 < 0.0) r.fail(pp + ".F0", "must be >= 0");
    if (!(base.pulse.omega > 0.0)) r.fail(pp + ".omega", "must be > 0");
    if (!(base.pulse.T > 0.0)) r.fail(pp + ".T", "must be > 0");
  }
  if (obj.contains("t") && obj.contains("times")) r.fail(at("times"), "give either t or times, not both");
  if (obj.contains("t")) base.times = {r.number(obj["t"], at("t"))};
  if (obj.contains("times")) {
    const auto& ts = obj["times"];
    if (!ts.is_array()) r.fail(at("times"), "expected an array of numbers");
    if (ts.empty()) r.fail(at("times"), "empty time list");
    base.times.clear();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      base.times.push_back(r.number(ts[i], at("times") + "[" + std::to_string(i) + "]"));
    }
  }
  if (obj.contains("grid")) base.grid = parse_grid(obj["grid"], r, at("grid"));
  if (obj.contains("quadrature")) {
    const auto& q = obj["quadrature"];
    const std::string qp = at("quadrature");
    r.expect_keys(q, qp, {"n_radial", "n_angular", "r_max", "tol"});
    if (q.contains("n_radial")) base.quadrature.n_radial = r.positive_int(q["n_radial"], qp + ".n_radial");
    if (q.contains("n_angular")) base.quadrature.n_angular = r.positive_int(q["n_angular"], qp + ".n_angular", 8);
    if (q.contains("r_max")) base.quadrature.r_max = r.number(q["r_max"], qp + ".r_max");
    if (q.contains("tol")) {
      base.quadrature.tol = r.number(q["tol"], qp + ".tol");
      if (!(base.quadrature.tol > 0.0)) r.fail(qp + ".tol", "must be > 0");
    }
  }
  if (obj.contains("centers")) {
    const auto& c = obj["centers"];
    r.expect_keys(c, at("centers"), {"mode"});
    if (c.contains("mode")) {
      const std::string m = r.text(c["mode"], at("centers") + ".mode");
      if (m == "exact") {
        base.center_mode = CenterMode::ExactBracketRoot;
      } else if (m == "leading_order") {
        base.center_mode = CenterMode::PaperApprox;
      } else {
        r.fail(at("centers") + ".mode", "expected \"exact\" or \"leading_order\"");
      }
    }
  }
  if (obj.contains("output")) {
    const auto& o = obj["output"];
    const std::string op = at("output");
    r.expect_keys(o, op, {"dir", "prefix", "csv", "ppm", "svg"});
    if (o.contains("dir")) base.output.dir = r.text(o["dir"], op + ".dir");
    if (o.contains("prefix")) base.output.prefix = r.text(o["prefix"], op + ".prefix");
    if (o.contains("csv")) base.output.csv = r.boolean(o["csv"], op + ".csv");
    if (o.contains("ppm")) base.output.ppm = r.boolean(o["ppm"], op + ".ppm");
    if (o.contains("svg")) base.output.svg = r.boolean(o["svg"], op + ".svg");
  }
  if (obj.contains("quiver")) {
    const auto& q = obj["quiver"];
    const std::string qp = at("quiver");
    r.expect_keys(q, qp, {"nx", "ny", "streamlines"});
    if (q.contains("nx")) base.quiver.nx = r.positive_int(q["nx"], qp + ".nx", 2);
    if (q.contains("ny")) base.quiver.ny = r.positive_int(q["ny"], qp + ".ny", 2);
    if (q.contains("streamlines")) base.quiver.streamlines = r.positive_int(q["streamlines"], qp + ".streamlines", 0);
  }
  return base;
}

void check_panel(const Panel& p, const Reader& r, const std::string& path) {
  auto at = [&](const char* k) { return Reader::join(path, k); };
  const bool generic = p.rep.space == Space::Momentum && p.rep.kind == MomentumWavefunctionKind::GenericQuadrature;
  if (!generic && !p.pulse.is_canonical()) {
    r.fail(at("pulse"), "closed forms need omega = pi, T = 4, alpha = 0 (use kind \"quad\" for other pulses)");
  }
  for (std::size_t i = 1; i < p.times.size(); ++i) {
    if (!(p.times[i] > p.times[i - 1])) r.fail(at("times"), "times must be strictly ascending");
  }
  for (double t : p.times) {
    if (!generic && t < 4.0) r.fail(p.times.size() == 1 ? at("t") : at("times"), "closed forms need t >= 4");
    if (t < 0.0) r.fail(at("t"), "t must be >= 0");
  }
  if (p.quantity == Quantity::Cuts && p.rep.space != Space::Position) {
    r.fail(at("quantity"), "line cuts are defined for the position packet (space \"r\")");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig cfg;
  cfg.source = source;
  const bool blank = std::all_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (blank) {
    cfg.panels.push_back(Panel{});
    return cfg;
  }

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + offset, '\n');
    const auto line_start = text.rfind('\n', offset == 0 ? 0 : offset - 1);
    const auto column = offset - (line_start == std::string::npos ? 0 : line_start + 1) + 1;
    throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": invalid JSON");
  }

  const char* cursor = text.data();
  PathRecorder recorder(text, &cursor);
  json::sax_parse(TrackingIterator(text.data(), &cursor), TrackingIterator(text.data() + text.size(), &cursor),
                  &recorder);
  const Reader r(source, recorder.lines);

  if (!doc.is_object()) r.fail("", "the document must be a JSON object");
  const Panel base = parse_panel(doc, Panel{}, r, "", true);
  if (doc.contains("panels")) {
    const auto& panels = doc["panels"];
    if (!panels.is_array() || panels.empty()) r.fail("panels", "expected a non-empty array of objects");
    std::set<std::string> names;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      const std::string path = "panels[" + std::to_string(i) + "]";
      Panel p = parse_panel(panels[i], base, r, path, false);
      if (p.name.empty()) p.name = std::to_string(i);
      if (!names.insert(p.name).second) r.fail(path + ".name", "duplicate panel name");
      check_panel(p, r, path);
      cfg.panels.push_back(std::move(p));
    }
  } else {
    check_panel(base, r, "");
    cfg.panels.push_back(base);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

void apply_overrides(RunConfig& cfg, const Overrides& o) {
  const Reader r("command line", {});
  for (auto& p : cfg.panels) {
    if (o.F0) {
      if (!(*o.F0 >= 0.0) || !std::isfinite(*o.F0)) r.fail("--F0", "must be a finite number >= 0");
      p.pulse.F0 = *o.F0;
    }
    if (o.t) {
      if (!std::isfinite(*o.t)) r.fail("--t", "must be finite");
      p.times = {*o.t};
    }
    if (o.space) p.rep.space = parse_space(*o.space, r, "--space");
    if (o.kind) p.rep.kind = parse_kind(*o.kind, r, "--kind");
    if (o.quantity) p.quantity = parse_quantity(*o.quantity, r, "--quantity");
    if (o.out) p.output.dir = *o.out;
    check_panel(p, r, p.name.empty() ? "" : "panel " + p.name);
  }
}

GridSpec resolve_grid(const Panel& p, double t) {
  if (!p.grid.automatic) return p.grid.explicit_spec;
  const bool momentum = p.rep.space == Space::Momentum;
  double cu = 0.0, cv = 0.0;
  std::string anchor = p.grid.anchor;
  if (anchor == "default") anchor = momentum ? "origin" : "upper";
  if (anchor == "point") {
    cu = p.grid.anchor_u;
    cv = p.grid.anchor_v;
  } else if (anchor == "upper" || anchor == "lower") {
    const int s = anchor == "upper" ? 0 : 1;
    if (momentum) {
      cv = s == 0 ? k0 : -k0;
    } else {
      const auto c = position_centers(p.pulse.F0, t, p.center_mode)[s];
      cu = c.u;
      cv = c.v;
    }
  }
  const double half = p.grid.half_width > 0.0 ? p.grid.half_width : (momentum ? 4.0 : 3.0 * packet_width(t).a());
  return window(cu, cv, half, p.grid.n);
}

}  // namespace qvortex::app
