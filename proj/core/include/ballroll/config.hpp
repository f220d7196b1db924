#pragma once

#include <ballroll/chart.hpp>
#include <ballroll/geometry.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ballroll {

/// Built-in surface with parameters, written `name:key=value,flag,...`.
/// Known kinds and parameters (defaults in parentheses):
///   plane
///   sphere      R (1), inward | outward (inward)
///   cylinder    R (1), inward | outward (inward)
///   ellipsoid   a (1.5), b (1), c (0.75), inward | outward (outward)
///   torus       R (2), r (1)
///   catenoid    c (1)
///   unduloid    H (1), neck (0.25)
///   graph       z (expression in x, y), xmin, xmax, ymin, ymax (-1, 1, -1, 1)
struct SurfaceSpec {
  std::string kind = "plane";
  /// Parameter values keyed by name; flags map to an empty string.
  std::map<std::string, std::string> params;

  static SurfaceSpec parse(std::string_view text);
  /// Canonical text: parameters sorted by key, numbers in shortest
  /// round-trip form.
  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] bool has_flag(const std::string& name) const;
  [[nodiscard]] double number(const std::string& name, double fallback) const;
};

/// Throws InvalidArgument for unknown kinds or parameters and ParseError for
/// malformed values.
SurfaceChart make_surface(const SurfaceSpec& spec);

/// Default sampling rectangle: the whole range of periodic coordinates and
/// the middle 80% of the others.
ParamRegion default_region(const ParamDomain& domain, int nu, int nv);

/// r values a, ..., b in `count` steps, linear or logarithmic.
struct RadiusRange {
  double min = 0.5;
  double max = 2.0;
  int count = 16;
  bool log = false;

  [[nodiscard]] std::vector<double> values() const;
};

struct RunConfig {
  SurfaceSpec surface;
  std::optional<Vec2> at;
  std::vector<double> dirs;
  std::optional<double> r;
  std::optional<RadiusRange> r_range;
  double theta = 0.0;
  double length = 1.0;
  /// User path: chart coordinates u(t) and v(t) as expressions in t, over
  /// [t_min, t_max]. Rolls along a geodesic when empty.
  std::optional<std::pair<std::string, std::string>> path;
  double t_min = 0.0;
  double t_max = 1.0;
  int grid_u = 8;
  int grid_v = 8;
  /// u_min, u_max, v_min, v_max; defaults to default_region.
  std::optional<std::array<double, 4>> region;
  int points = 10;
  bool simulate = false;
  double arc = 1e-2;
  double tol_iso = 1e-8;
  double tol_sim = 1e-4;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  bool json = false;

  /// One `key = value` per line in a fixed key order; `#` starts a comment.
  [[nodiscard]] std::string to_text() const;
  static RunConfig from_text(std::string_view text);
  /// Applies a single `key = value` assignment.
  void set(const std::string& key, const std::string& value);
};

/// Shortest round-trip decimal form of a double.
std::string canonical_number(double value);
double parse_number(std::string_view text);
std::vector<double> parse_number_list(std::string_view text);

}  // namespace ballroll
