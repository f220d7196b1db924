#include <ballroll/config.hpp>
#include <ballroll/expression.hpp>
#include <ballroll/surfaces.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include <fmt/core.h>

namespace ballroll {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool parse_bool(std::string_view text) {
  const auto t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  fail(ErrorKind::ParseError, fmt::format("expected a boolean, got '{}'", t));
}

int parse_int(std::string_view text) {
  const auto t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    fail(ErrorKind::ParseError, fmt::format("expected an integer, got '{}'", t));
  }
  return value;
}

const std::map<std::string, std::set<std::string>>& known_params() {
  static const std::map<std::string, std::set<std::string>> table = {
      {"plane", {}},
      {"sphere", {"R", "inward", "outward"}},
      {"cylinder", {"R", "inward", "outward"}},
      {"ellipsoid", {"a", "b", "c", "inward", "outward"}},
      {"torus", {"R", "r"}},
      {"catenoid", {"c"}},
      {"unduloid", {"H", "neck"}},
      {"graph", {"z", "xmin", "xmax", "ymin", "ymax"}},
  };
  return table;
}

bool is_flag(const std::string& key) { return key == "inward" || key == "outward"; }

std::string join_list(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += canonical_number(values[i]);
  }
  return s;
}

}  // namespace

std::string canonical_number(double value) { return fmt::format("{}", value); }

double parse_number(std::string_view text) {
  const auto t = trim(text);
  if (t.empty()) fail(ErrorKind::ParseError, "expected a number, got an empty string");
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec == std::errc() && ptr == t.data() + t.size()) return value;
  // Constant expressions such as pi/3.
  const Expression expr = Expression::parse(t);
  const double a = expr(0.0, 0.0);
  if (a != expr(1.0, 1.0)) {
    fail(ErrorKind::ParseError, fmt::format("expected a constant, got '{}'", t));
  }
  return a;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const auto part : split(text, ',')) out.push_back(parse_number(part));
  return out;
}

SurfaceSpec SurfaceSpec::parse(std::string_view text) {
  SurfaceSpec spec;
  const auto colon = text.find(':');
  spec.kind = std::string(trim(text.substr(0, colon)));
  const auto& table = known_params();
  const auto it = table.find(spec.kind);
  if (it == table.end()) fail(ErrorKind::InvalidArgument, fmt::format("unknown surface '{}'", spec.kind));
  if (colon == std::string_view::npos) return spec;
  for (const auto item : split(text.substr(colon + 1), ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    std::string key(trim(item.substr(0, eq)));
    if (!it->second.contains(key)) {
      fail(ErrorKind::InvalidArgument,
           fmt::format("surface '{}' has no parameter '{}'", spec.kind, key));
    }
    if (eq == std::string_view::npos) {
      if (!is_flag(key)) fail(ErrorKind::ParseError, fmt::format("parameter '{}' needs a value", key));
      spec.params.erase(key == "inward" ? "outward" : "inward");
      spec.params[key] = "";
      continue;
    }
    if (is_flag(key)) fail(ErrorKind::ParseError, fmt::format("flag '{}' takes no value", key));
    const auto value = trim(item.substr(eq + 1));
    if (key == "z") {
      spec.params[key] = Expression::parse(value).text();
    } else {
      spec.params[key] = canonical_number(parse_number(value));
    }
  }
  return spec;
}

std::string SurfaceSpec::to_text() const {
  std::string s = kind;
  char sep = ':';
  for (const auto& [key, value] : params) {
    s += sep;
    s += key;
    if (!value.empty()) s += '=' + value;
    sep = ',';
  }
  return s;
}

bool SurfaceSpec::has_flag(const std::string& name) const { return params.contains(name); }

double SurfaceSpec::number(const std::string& name, double fallback) const {
  const auto it = params.find(name);
  return it == params.end() ? fallback : parse_number(it->second);
}

SurfaceChart make_surface(const SurfaceSpec& spec) {
  const std::string& k = spec.kind;
  auto positive = [&](const std::string& name, double fallback) {
    const double x = spec.number(name, fallback);
    if (!(x > 0.0)) fail(ErrorKind::InvalidArgument, fmt::format("{} must be positive", name));
    return x;
  };
  if (k == "plane") return make_plane();
  if (k == "sphere") return make_sphere(positive("R", 1.0), !spec.has_flag("outward"));
  if (k == "cylinder") return make_cylinder(positive("R", 1.0), !spec.has_flag("outward"));
  if (k == "ellipsoid") {
    return make_ellipsoid(positive("a", 1.5), positive("b", 1.0), positive("c", 0.75),
                          spec.has_flag("inward"));
  }
  if (k == "torus") {
    const double R = positive("R", 2.0);
    const double r = positive("r", 1.0);
    if (r >= R) fail(ErrorKind::InvalidArgument, "torus needs r < R");
    return make_torus(R, r);
  }
  if (k == "catenoid") return make_catenoid(positive("c", 1.0));
  if (k == "unduloid") {
    const double H = positive("H", 1.0);
    const double neck = positive("neck", 0.25);
    if (neck >= 0.5 / H) fail(ErrorKind::InvalidArgument, "unduloid needs neck < 1/(2H)");
    return make_unduloid(H, neck);
  }
  if (k == "graph") {
    const auto it = spec.params.find("z");
    if (it == spec.params.end()) fail(ErrorKind::InvalidArgument, "graph needs z=<expression>");
    ParamDomain dom;
    dom.u_min = spec.number("xmin", -1.0);
    dom.u_max = spec.number("xmax", 1.0);
    dom.v_min = spec.number("ymin", -1.0);
    dom.v_max = spec.number("ymax", 1.0);
    if (!(dom.u_min < dom.u_max && dom.v_min < dom.v_max)) {
      fail(ErrorKind::InvalidArgument, "graph needs xmin < xmax and ymin < ymax");
    }
    return make_graph(Expression::parse(it->second), dom);
  }
  fail(ErrorKind::InvalidArgument, fmt::format("unknown surface '{}'", k));
}

ParamRegion default_region(const ParamDomain& d, int nu, int nv) {
  ParamRegion reg;
  reg.nu = nu;
  reg.nv = nv;
  const double du = d.u_periodic ? 0.0 : 0.1 * (d.u_max - d.u_min);
  const double dv = d.v_periodic ? 0.0 : 0.1 * (d.v_max - d.v_min);
  reg.u_min = d.u_min + du;
  reg.u_max = d.u_max - du;
  reg.v_min = d.v_min + dv;
  reg.v_max = d.v_max - dv;
  return reg;
}

std::vector<double> RadiusRange::values() const {
  if (count < 1) fail(ErrorKind::InvalidArgument, "radius range needs at least one value");
  if (log && !(min > 0.0 && max > 0.0)) {
    fail(ErrorKind::InvalidArgument, "log radius range needs positive bounds");
  }
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double s = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out.push_back(log ? min * std::pow(max / min, s) : min + s * (max - min));
  }
  return out;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string_view value = trim(raw);
  auto pair = [&](std::string_view what) {
    const auto v = parse_number_list(value);
    if (v.size() != 2) fail(ErrorKind::ParseError, fmt::format("{} expects two numbers", what));
    return v;
  };
  if (key == "surface") {
    surface = SurfaceSpec::parse(value);
  } else if (key == "at") {
    const auto v = pair("at");
    at = Vec2(v[0], v[1]);
  } else if (key == "dirs") {
    dirs = parse_number_list(value);
  } else if (key == "r") {
    r = parse_number(value);
  } else if (key == "r_range") {
    const auto parts = split(value, ':');
    if (parts.size() < 3 || parts.size() > 4 || (parts.size() == 4 && parts[3] != "log")) {
      fail(ErrorKind::ParseError, "r_range expects min:max:count[:log]");
    }
    r_range = RadiusRange{parse_number(parts[0]), parse_number(parts[1]), parse_int(parts[2]),
                          parts.size() == 4};
  } else if (key == "theta") {
    theta = parse_number(value);
  } else if (key == "length") {
    length = parse_number(value);
  } else if (key == "path") {
    const auto parts = split(value, ';');
    if (parts.size() != 2) fail(ErrorKind::ParseError, "path expects '<u(t)>; <v(t)>'");
    path = std::pair{Expression::parse(parts[0]).text(), Expression::parse(parts[1]).text()};
  } else if (key == "t_range") {
    const auto v = pair("t_range");
    t_min = v[0];
    t_max = v[1];
  } else if (key == "grid") {
    const auto parts = split(value, ',');
    if (parts.size() != 2) fail(ErrorKind::ParseError, "grid expects nu,nv");
    grid_u = parse_int(parts[0]);
    grid_v = parse_int(parts[1]);
  } else if (key == "region") {
    const auto v = parse_number_list(value);
    if (v.size() != 4) fail(ErrorKind::ParseError, "region expects u_min,u_max,v_min,v_max");
    region = std::array<double, 4>{v[0], v[1], v[2], v[3]};
  } else if (key == "points") {
    points = parse_int(value);
  } else if (key == "simulate") {
    simulate = parse_bool(value);
  } else if (key == "arc") {
    arc = parse_number(value);
  } else if (key == "tol_iso") {
    tol_iso = parse_number(value);
  } else if (key == "tol_sim") {
    tol_sim = parse_number(value);
  } else if (key == "seed") {
    std::uint64_t s = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      fail(ErrorKind::ParseError, fmt::format("expected a seed, got '{}'", value));
    }
    seed = s;
  } else if (key == "jobs") {
    jobs = parse_int(value);
  } else if (key == "out") {
    out = std::string(value);
  } else if (key == "json") {
    json = parse_bool(value);
  } else {
    fail(ErrorKind::ParseError, fmt::format("unknown config key '{}'", key));
  }
}

std::string RunConfig::to_text() const {
  std::ostringstream s;
  s << "surface = " << surface.to_text() << '\n';
  if (at) s << "at = " << canonical_number(at->x()) << ',' << canonical_number(at->y()) << '\n';
  if (!dirs.empty()) s << "dirs = " << join_list(dirs) << '\n';
  if (r) s << "r = " << canonical_number(*r) << '\n';
  if (r_range) {
    s << "r_range = " << canonical_number(r_range->min) << ':' << canonical_number(r_range->max)
      << ':' << r_range->count << (r_range->log ? ":log" : "") << '\n';
  }
  s << "theta = " << canonical_number(theta) << '\n';
  s << "length = " << canonical_number(length) << '\n';
  if (path) s << "path = " << path->first << "; " << path->second << '\n';
  s << "t_range = " << canonical_number(t_min) << ',' << canonical_number(t_max) << '\n';
  s << "grid = " << grid_u << ',' << grid_v << '\n';
  if (region) {
    s << "region = " << join_list({(*region)[0], (*region)[1], (*region)[2], (*region)[3]})
      << '\n';
  }
  s << "points = " << points << '\n';
  s << "simulate = " << (simulate ? "true" : "false") << '\n';
  s << "arc = " << canonical_number(arc) << '\n';
  s << "tol_iso = " << canonical_number(tol_iso) << '\n';
  s << "tol_sim = " << canonical_number(tol_sim) << '\n';
  s << "seed = " << seed << '\n';
  s << "jobs = " << jobs << '\n';
  if (!out.empty()) s << "out = " << out << '\n';
  s << "json = " << (json ? "true" : "false") << '\n';
  return s.str();
}

RunConfig RunConfig::from_text(std::string_view text) {
  RunConfig cfg;
  int line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    const auto hash = line.find('#');
    line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::ParseError, fmt::format("line {}: expected 'key = value'", line_no));
    }
    cfg.set(std::string(trim(line.substr(0, eq))), std::string(line.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace ballroll
