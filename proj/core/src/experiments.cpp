#include <ballroll/experiments.hpp>
#include <ballroll/io.hpp>
#include <ballroll/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <fmt/core.h>
#include <json.hpp>

namespace ballroll {

namespace {

using json = nlohmann::ordered_json;

double angle_mod_pi(double theta) {
  double a = std::fmod(theta, std::numbers::pi);
  if (a < 0.0) a += std::numbers::pi;
  return a;
}

std::size_t count_nonparallel(std::span<const double> thetas) {
  constexpr double kTol = 1e-9;
  std::vector<double> reps;
  for (const double th : thetas) {
    const double a = angle_mod_pi(th);
    const bool seen = std::any_of(reps.begin(), reps.end(), [&](double b) {
      const double d = std::abs(a - b);
      return std::min(d, std::numbers::pi - d) < kTol;
    });
    if (!seen) reps.push_back(a);
  }
  return reps.size();
}

// Least-squares fit of y = alpha + c x.
std::pair<double, double> fit_affine(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double c = sxx > 0.0 ? sxy / sxx : 0.0;
  return {my - c * mx, c};
}

double spread(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

json geometry_json(const PointGeometry& pg) {
  json j;
  j["u"] = pg.u;
  j["v"] = pg.v;
  j["position"] = {pg.position.x(), pg.position.y(), pg.position.z()};
  j["normal"] = {pg.normal.x(), pg.normal.y(), pg.normal.z()};
  j["first_form"] = {{"E", pg.E}, {"F", pg.F}, {"G", pg.G}};
  j["second_form"] = {{"e", pg.e}, {"f", pg.f}, {"g", pg.g}};
  j["k1"] = pg.k1;
  j["k2"] = pg.k2;
  j["mean_curvature"] = pg.mean_curvature();
  j["gaussian_curvature"] = pg.gaussian_curvature();
  j["e1"] = {pg.e1.x(), pg.e1.y(), pg.e1.z()};
  j["e2"] = {pg.e2.x(), pg.e2.y(), pg.e2.z()};
  j["is_umbilic"] = pg.is_umbilic;
  return j;
}

}  // namespace

double speed_squared_from_darboux(double kappa_n, double tau_g, double r) {
  const double a = 1.0 - r * kappa_n;
  return a * a + r * r * tau_g * tau_g;
}

double cos2_coefficient(double k1, double k2, double r) {
  return r * (k2 - k1) * (2.0 - r * (k1 + k2));
}

double speed_squared(double k1, double k2, double theta, double r) {
  const double c = std::cos(theta);
  return 1.0 + r * r * k2 * k2 - 2.0 * r * k2 + cos2_coefficient(k1, k2, r) * c * c;
}

double speed_squared(const PointGeometry& pg, double theta, double r) {
  return speed_squared(pg.k1, pg.k2, theta, r);
}

std::optional<double> cmc_radius(const PointGeometry& pg) {
  const double sum = pg.k1 + pg.k2;
  const double scale = std::max({1.0, std::abs(pg.k1), std::abs(pg.k2)});
  if (std::abs(sum) < 1e-12 * scale) return std::nullopt;
  return 2.0 / sum;
}

double initial_speed_simulated(const SurfaceChart& chart, double u, double v, double theta,
                               double r, const SimulationOptions& options) {
  const SurfaceCurve curve = geodesic_from(chart, u, v, theta, options.arc, options.geodesic);
  const Rolling rolling = roll(curve, BallRoller{r}, options.anti);
  return initial_center_speed(rolling.motion, r);
}

std::string_view to_string(Verdict v) {
  return v == Verdict::Isotropic ? "Isotropic" : "Anisotropic";
}

std::string_view to_string(IsotropyRelation r) {
  switch (r) {
    case IsotropyRelation::Umbilic: return "umbilic";
    case IsotropyRelation::ROneOverH: return "r_equals_1_over_h";
    case IsotropyRelation::Neither: break;
  }
  return "neither";
}

std::string_view to_string(SpeedClass c) {
  switch (c) {
    case SpeedClass::Plane: return "Plane";
    case SpeedClass::Sphere: return "Sphere";
    case SpeedClass::Cylinder: return "Cylinder";
    case SpeedClass::NotConstant: break;
  }
  return "NotConstant";
}

IsotropyReport isotropy_test(const SurfaceChart& chart, double u, double v, double r,
                             std::span<const double> thetas, const IsotropyOptions& options) {
  if (count_nonparallel(thetas) < 3) {
    fail(ErrorKind::BadDirections, "need at least three pairwise nonparallel directions");
  }
  IsotropyReport rep;
  rep.geometry = evaluate_point_geometry(chart, u, v);
  rep.r = r;
  const PointGeometry& pg = rep.geometry;

  rep.samples.resize(thetas.size());
  parallel_for(thetas.size(), options.jobs, [&](std::size_t i) {
    SpeedSample& s = rep.samples[i];
    s.u = u;
    s.v = v;
    s.r = r;
    s.theta = thetas[i];
    s.speed_closed = std::sqrt(std::max(0.0, speed_squared(pg, thetas[i], r)));
    if (options.simulate) {
      s.speed_simulated = initial_speed_simulated(chart, u, v, thetas[i], r, options.simulation);
    }
  });

  std::vector<double> closed, simulated, cos2, measured2;
  for (const SpeedSample& s : rep.samples) {
    closed.push_back(s.speed_closed);
    const double c = std::cos(s.theta);
    cos2.push_back(c * c);
    const double m = s.speed_simulated.value_or(s.speed_closed);
    measured2.push_back(m * m);
    if (s.speed_simulated) simulated.push_back(*s.speed_simulated);
  }
  rep.spread_closed = spread(closed);
  rep.verdict = rep.spread_closed < options.tol_closed ? Verdict::Isotropic : Verdict::Anisotropic;
  if (options.simulate) {
    rep.spread_simulated = spread(simulated);
    rep.simulated_verdict = *rep.spread_simulated < options.tol_simulated ? Verdict::Isotropic
                                                                          : Verdict::Anisotropic;
  }

  if (pg.is_umbilic) {
    rep.relation = IsotropyRelation::Umbilic;
  } else if (std::abs(2.0 - r * (pg.k1 + pg.k2)) < options.tol_closed) {
    rep.relation = IsotropyRelation::ROneOverH;
  }
  rep.coefficient_closed = cos2_coefficient(pg.k1, pg.k2, r);
  rep.coefficient_fitted = fit_affine(cos2, measured2).second;
  return rep;
}

ConstantSpeedClassification classify_constant_speed(const SurfaceChart& chart,
                                                    const ParamRegion& grid, double r,
                                                    const ClassifyOptions& options) {
  if (grid.nu < 1 || grid.nv < 1 || options.directions < 1) {
    fail(ErrorKind::InvalidArgument, "empty classification grid");
  }
  const auto nu = static_cast<std::size_t>(grid.nu);
  const std::size_t count = nu * static_cast<std::size_t>(grid.nv);
  std::vector<PointGeometry> points(count);
  parallel_for(count, options.jobs, [&](std::size_t k) {
    const int i = static_cast<int>(k % nu);
    const int j = static_cast<int>(k / nu);
    points[k] = evaluate_point_geometry(chart, grid.u_at(i), grid.v_at(j));
  });

  ConstantSpeedClassification out;
  out.r = r;
  out.points = count;
  out.directions = static_cast<std::size_t>(options.directions);
  out.speed_min = std::numeric_limits<double>::infinity();
  out.speed_max = -std::numeric_limits<double>::infinity();
  out.k1_min = out.k2_min = std::numeric_limits<double>::infinity();
  out.k1_max = out.k2_max = -std::numeric_limits<double>::infinity();
  double kmax = 0.0;
  for (const PointGeometry& pg : points) {
    for (int d = 0; d < options.directions; ++d) {
      const double theta = std::numbers::pi * d / options.directions;
      const double s = std::sqrt(std::max(0.0, speed_squared(pg, theta, r)));
      out.speed_min = std::min(out.speed_min, s);
      out.speed_max = std::max(out.speed_max, s);
    }
    out.k1_min = std::min(out.k1_min, pg.k1);
    out.k1_max = std::max(out.k1_max, pg.k1);
    out.k2_min = std::min(out.k2_min, pg.k2);
    out.k2_max = std::max(out.k2_max, pg.k2);
    kmax = std::max({kmax, std::abs(pg.k1), std::abs(pg.k2)});
  }
  if (out.speed_max - out.speed_min >= options.tol_speed) return out;

  const double tol = options.tol_curvature * std::max(1.0, kmax);
  auto is_zero = [&](double lo, double hi) { return std::abs(lo) < tol && std::abs(hi) < tol; };
  auto is_const = [&](double lo, double hi) { return hi - lo < tol; };
  const bool k1_zero = is_zero(out.k1_min, out.k1_max);
  const bool k2_zero = is_zero(out.k2_min, out.k2_max);
  const bool k1_const = is_const(out.k1_min, out.k1_max);
  const bool k2_const = is_const(out.k2_min, out.k2_max);

  if (k1_zero && k2_zero) {
    out.kind = SpeedClass::Plane;
  } else if (k1_const && k2_const && std::abs(out.k1_max - out.k2_min) < tol) {
    out.kind = SpeedClass::Sphere;
    out.radius = 1.0 / std::abs(out.k1_max);
  } else if ((k1_const && k2_zero) || (k2_const && k1_zero)) {
    const double k = k2_zero ? out.k1_max : out.k2_min;
    out.kind = SpeedClass::Cylinder;
    out.radius = 1.0 / std::abs(k);
    out.radius_matches = std::abs(r * k - 2.0) < options.tol_curvature;
  }
  return out;
}

std::vector<SpeedSample> speed_landscape(const SurfaceChart& chart, double u, double v,
                                         std::span<const double> radii,
                                         std::span<const double> thetas, bool simulate, int jobs,
                                         const SimulationOptions& simulation) {
  const PointGeometry pg = evaluate_point_geometry(chart, u, v);
  std::vector<SpeedSample> out(radii.size() * thetas.size());
  parallel_for(out.size(), jobs, [&](std::size_t k) {
    SpeedSample& s = out[k];
    s.u = u;
    s.v = v;
    s.r = radii[k / thetas.size()];
    s.theta = thetas[k % thetas.size()];
    s.speed_closed = std::sqrt(std::max(0.0, speed_squared(pg, s.theta, s.r)));
    if (simulate) s.speed_simulated = initial_speed_simulated(chart, u, v, s.theta, s.r, simulation);
  });
  return out;
}

void write_speed_csv(std::ostream& out, std::span<const SpeedSample> samples) {
  out << "u,v,r,theta,speed_closed,speed_simulated\n";
  for (const SpeedSample& s : samples) {
    out << join_numbers({s.u, s.v, s.r, s.theta, s.speed_closed}) << ','
        << (s.speed_simulated ? format_number(*s.speed_simulated) : std::string()) << '\n';
  }
}

void write_isotropy_json(std::ostream& out, const IsotropyReport& rep) {
  json j;
  j["u"] = rep.geometry.u;
  j["v"] = rep.geometry.v;
  j["r"] = rep.r;
  j["k1"] = rep.geometry.k1;
  j["k2"] = rep.geometry.k2;
  j["is_umbilic"] = rep.geometry.is_umbilic;
  json thetas = json::array();
  for (const SpeedSample& s : rep.samples) thetas.push_back(s.theta);
  j["thetas"] = thetas;
  j["spread_closed"] = rep.spread_closed;
  j["verdict"] = to_string(rep.verdict);
  if (rep.spread_simulated) {
    j["spread_simulated"] = *rep.spread_simulated;
    j["simulated_verdict"] = to_string(*rep.simulated_verdict);
  }
  j["relation"] = to_string(rep.relation);
  j["coefficient_closed"] = rep.coefficient_closed;
  j["coefficient_fitted"] = rep.coefficient_fitted;
  out << j.dump(2) << '\n';
}

void write_classification_json(std::ostream& out, const ConstantSpeedClassification& c) {
  json j;
  j["verdict"] = to_string(c.kind);
  if (c.radius) j["R"] = *c.radius;
  if (c.radius_matches) j["r_equals_2R"] = *c.radius_matches;
  j["r"] = c.r;
  j["speed_min"] = c.speed_min;
  j["speed_max"] = c.speed_max;
  j["signature"] = {{"k1_min", c.k1_min}, {"k1_max", c.k1_max},
                    {"k2_min", c.k2_min}, {"k2_max", c.k2_max}};
  j["points"] = c.points;
  j["directions"] = c.directions;
  out << j.dump(2) << '\n';
}

void write_point_geometry_json(std::ostream& out, const PointGeometry& pg) {
  out << geometry_json(pg).dump(2) << '\n';
}

}  // namespace ballroll
