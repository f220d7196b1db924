// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status is
// the number of failures.

#include "support/oracles.hpp"

#include <ballroll/curves.hpp>
#include <ballroll/experiments.hpp>
#include <ballroll/geometry.hpp>
#include <ballroll/rolling.hpp>
#include <ballroll/surfaces.hpp>
#include <ballroll/config.hpp>

#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace ballroll;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<double> even_directions(int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(kPi * i / n);
  return out;
}

Vec2 random_point(const SurfaceChart& chart, std::mt19937_64& g) {
  const ParamRegion box = default_region(chart.domain(), 2, 2);
  return {oracle::uniform(g, box.u_min, box.u_max), oracle::uniform(g, box.v_min, box.v_max)};
}

bool umbilic(const PointGeometry& pg) { return pg.k1 - pg.k2 < 1e-3 * std::max(1.0, std::abs(pg.k1)); }

IsotropyOptions simulated() {
  IsotropyOptions o;
  o.simulate = true;
  o.jobs = 4;
  return o;
}

Outcome ac1() {
  const SurfaceChart sphere = make_sphere(1.0, true);
  const auto dirs = even_directions(16);
  double worst = 0.0;
  bool iso = true;
  for (double r : {0.25, 0.5, 2.0}) {
    const IsotropyReport rep = isotropy_test(sphere, 0.3, 0.2, r, dirs, simulated());
    for (const auto& s : rep.samples) worst = std::max(worst, std::abs(*s.speed_simulated - std::abs(1 - r)));
    iso = iso && rep.verdict == Verdict::Isotropic && rep.simulated_verdict == Verdict::Isotropic;
  }
  return {worst < 1e-4 && iso, fmt::format("max |speed - |1-r|| = {:.3e}, isotropic = {}", worst, iso)};
}

Outcome ac2() {
  const SurfaceChart cyl = make_cylinder(1.0, true);
  auto g = oracle::rng(2);
  SimulationOptions sim;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Vec2 uv = random_point(cyl, g);
    for (double th : even_directions(8))
      worst = std::max(worst, std::abs(initial_speed_simulated(cyl, uv.x(), uv.y(), th, 2.0, sim) - 1.0));
  }
  const ParamRegion grid = default_region(cyl.domain(), 8, 6);
  const auto c2 = classify_constant_speed(cyl, grid, 2.0);
  const auto c19 = classify_constant_speed(cyl, grid, 1.9);
  const bool cyl_ok = c2.kind == SpeedClass::Cylinder && c2.radius &&
                      std::abs(*c2.radius - 1.0) < 1e-6 && c2.radius_matches.value_or(false);
  const bool nc = c19.kind == SpeedClass::NotConstant;
  return {worst < 1e-4 && cyl_ok && nc,
          fmt::format("max |speed - 1| = {:.3e}, r=2 -> {} R={}, r=1.9 -> {}", worst,
                      to_string(c2.kind), c2.radius.value_or(0.0), to_string(c19.kind))};
}

Outcome ac3() {
  const double H = 1.0;
  const SurfaceChart und = make_unduloid(H, 0.25);
  auto g = oracle::rng(3);
  const auto dirs = even_directions(6);
  int points = 0, ok = 0;
  double spread_c = 0.0, spread_s = 0.0, min_aniso = 1e300;
  while (points < 10) {
    const Vec2 uv = random_point(und, g);
    if (umbilic(evaluate_point_geometry(und, uv.x(), uv.y()))) continue;
    ++points;
    const auto at = isotropy_test(und, uv.x(), uv.y(), 1.0 / H, dirs, simulated());
    spread_c = std::max(spread_c, at.spread_closed);
    spread_s = std::max(spread_s, *at.spread_simulated);
    bool good = at.verdict == Verdict::Isotropic && at.simulated_verdict == Verdict::Isotropic;
    for (double f : {0.8, 1.25}) {
      const auto off = isotropy_test(und, uv.x(), uv.y(), f / H, dirs, simulated());
      min_aniso = std::min(min_aniso, *off.spread_simulated);
      good = good && off.verdict == Verdict::Anisotropic &&
             off.simulated_verdict == Verdict::Anisotropic;
    }
    ok += good;
  }
  return {ok == points,
          fmt::format("{}/{} points; r=1/H spread closed {:.2e} simulated {:.2e}; min spread off 1/H {:.2e}",
                      ok, points, spread_c, spread_s, min_aniso)};
}

Outcome ac4() {
  const SurfaceChart ell = make_ellipsoid(1.5, 1.0, 0.75, true);
  auto g = oracle::rng(4);
  std::vector<Vec2> pts;
  std::vector<double> radii;
  while (pts.size() < 10) {
    const Vec2 uv = random_point(ell, g);
    const PointGeometry pg = evaluate_point_geometry(ell, uv.x(), uv.y());
    if (umbilic(pg)) continue;
    pts.push_back(uv);
    radii.push_back(*cmc_radius(pg));
  }
  double min_gap = 1e300;
  for (std::size_t i = 0; i < radii.size(); ++i)
    for (std::size_t j = i + 1; j < radii.size(); ++j)
      min_gap = std::min(min_gap, std::abs(radii[i] - radii[j]));
  // Each radius is isotropic only at its own point.
  const auto dirs = even_directions(3);
  int own = 0, foreign = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const auto rep = isotropy_test(ell, pts[j].x(), pts[j].y(), radii[i], dirs);
      if (rep.verdict == Verdict::Isotropic) (i == j ? own : foreign) += 1;
    }
  return {min_gap > 1e-3 && own == 10 && foreign == 0,
          fmt::format("min pairwise cmc radius gap {:.3e}; isotropic at own point {}/10, elsewhere {}",
                      min_gap, own, foreign)};
}

Outcome ac5() {
  auto g = oracle::rng(5);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = oracle::uniform(g, -3, 3), b = oracle::uniform(g, -3, 3);
    const double k1 = std::max(a, b), k2 = std::min(a, b);
    const double th = oracle::uniform(g, 0, 2 * kPi), r = oracle::uniform(g, 0.05, 2.0);
    const EulerCurvatures e = euler_curvatures(k1, k2, th);
    worst = std::max(worst, std::abs(speed_squared_from_darboux(e.kappa_n, e.tau_g, r) -
                                     speed_squared(k1, k2, th, r)));
  }
  return {worst < 1e-12, fmt::format("max difference {:.3e} over 1000 samples", worst)};
}

SurfaceCurve wavy_curve(const SurfaceChart& chart, double u0, double v0) {
  return curve_from_parameter_path(
      chart,
      SurfaceCurve::PathFn([u0, v0](double t) {
        return PathJet{u0 + t, v0 + 0.2 * std::sin(2 * t), 1, 0.4 * std::cos(2 * t), 0,
                       -0.8 * std::sin(2 * t)};
      }),
      0.0, 1.0);
}

struct Family {
  std::string name;
  SurfaceCurve curve;
  Roller roller;
};

std::vector<Family> families() {
  const SurfaceChart ell = make_ellipsoid(1.5, 1.0, 0.75, true);
  const SurfaceChart torus = make_torus(2.0, 1.0);
  const SurfaceChart und = make_unduloid(1.0, 0.25);
  const SurfaceChart cat = make_catenoid(1.0);
  const SurfaceChart sphere = make_sphere(1.0, true);
  return {
      {"sphere geodesic, ball 0.5", geodesic_from(sphere, 0.2, 0.3, 0.4, 1.5), BallRoller{0.5}},
      {"sphere geodesic, ball 2", geodesic_from(sphere, 0.2, 0.3, 0.4, 1.5), BallRoller{2.0}},
      {"cylinder helix, ball 2", geodesic_from(make_cylinder(1.0, true), 0, 0, 0.7, 2.0), BallRoller{2.0}},
      {"ellipsoid geodesic, ball 0.3", geodesic_from(ell, 0.4, 0.2, 1.0, 1.0), BallRoller{0.3}},
      {"ellipsoid wavy, plane", wavy_curve(ell, 0.1, 0.1), PlaneRoller{}},
      {"torus wavy, ball -0.7", wavy_curve(torus, 0.0, 0.5), BallRoller{-0.7}},
      {"unduloid geodesic, ball 1", geodesic_from(und, 0.0, 0.3, 0.5, 0.5), BallRoller{1.0}},
      {"catenoid geodesic, ball 0.5", geodesic_from(cat, 0.0, 0.2, 0.9, 1.0), BallRoller{0.5}},
      {"ellipsoid wavy, torus chart", wavy_curve(ell, 0.1, 0.1),
       ChartRoller{make_torus(3.0, 1.0), 0.0, 0.0, 0.3}},
  };
}

Outcome ac6() {
  int ok = 0, total = 0;
  oracle::FamilyCheck worst;
  double worst_formula = 0.0;
  for (const Family& f : families()) {
    const Rolling rl = roll(f.curve, f.roller);
    const oracle::FamilyCheck c = oracle::check_family(rl.motion, rl.anti);
    const MotionResiduals mr = motion_residuals(rl.motion, rl.anti);
    worst.orthogonality = std::max(worst.orthogonality, c.orthogonality);
    worst.no_spin = std::max(worst.no_spin, c.no_spin);
    worst.no_skid = std::max(worst.no_skid, c.no_skid);
    worst.omega = std::max(worst.omega, c.omega);
    worst_formula = std::max(worst_formula, mr.omega_agreement);
    const bool good = c.orthogonality < 1e-9 && c.no_spin < 1e-8 && c.no_skid < 1e-7 &&
                      c.omega < 1e-5 && mr.omega_agreement < 1e-5;
    if (!good) fmt::print("  AC6 {} failed\n", f.name);
    ok += good;
    ++total;
  }
  return {ok == total,
          fmt::format("{}/{} families; worst orth {:.1e} spin {:.1e} skid {:.1e} omega {:.1e}/{:.1e}",
                      ok, total, worst.orthogonality, worst.no_spin, worst.no_skid, worst.omega,
                      worst_formula)};
}

Outcome ac7() {
  double worst = 0.0;
  for (const Family& f : families()) {
    const AntiDevelopment ad = anti_develop(f.roller, f.curve);
    for (const DarbouxTriple& m : measured_anti_development_curvature(ad))
      worst = std::max(worst, std::abs(m.kappa_g - darboux_data(f.curve, m.t).kappa_g));
  }
  const double v0 = 0.6;
  const SurfaceCurve lat = curve_from_parameter_path(
      make_sphere(1.0), SurfaceCurve::PathFn([v0](double t) { return PathJet{t, v0, 1, 0, 0, 0}; }),
      0.0, 2.0);
  const AntiDevelopment ad = anti_develop(PlaneRoller{}, lat);
  const double kg = std::abs(darboux_data(lat, 0.0).kappa_g);
  // The developed circle: center p + B / kappa_g, radius 1 / kappa_g.
  const CurveSample s0 = lat.sample(0.0);
  const double sign = darboux_data(lat, 0.0).kappa_g > 0 ? 1.0 : -1.0;
  const Vec3 center = s0.position + sign * s0.normal.cross(s0.velocity) / kg;
  double circle = 0.0;
  for (const Vec3& x : ad.points) circle = std::max(circle, std::abs((x - center).norm() - 1.0 / kg));
  for (const DarbouxTriple& m : measured_anti_development_curvature(ad))
    worst = std::max(worst, std::abs(m.kappa_g - darboux_data(lat, m.t).kappa_g));
  return {worst < 1e-7 && circle < 1e-6 && std::abs(kg - std::tan(v0)) < 1e-9,
          fmt::format("max |kg~ - kg| = {:.3e}; latitude circle radius error {:.3e}", worst, circle)};
}

bool fails_at_zero(const SurfaceChart& chart, double u, double v, double theta, double r) {
  const SurfaceCurve g = geodesic_from(chart, u, v, theta, 0.5);
  try {
    (void)roll(g, BallRoller{r});
  } catch (const NotRollingError& e) {
    return e.t() == 0.0;
  }
  return false;
}

Outcome ac8() {
  int ok = 0, total = 0;
  for (double theta : {0.0, 1.0, 2.0}) {
    ok += fails_at_zero(make_sphere(1.0, true), 0.3, 0.2, theta, 1.0);
    ok += fails_at_zero(make_sphere(2.0, true), -1.0, 0.5, theta, 2.0);
    total += 2;
  }
  // Umbilics of the ellipsoid a > b > c lie in the xz-plane.
  const double a = 1.5, b = 1.0, c = 0.75;
  const double v = std::atan2(std::sqrt(b * b - c * c), std::sqrt(a * a - b * b));
  const SurfaceChart ell = make_ellipsoid(a, b, c, true);
  const PointGeometry pg = evaluate_point_geometry(ell, 0.0, v);
  const double h = pg.mean_curvature();
  for (double theta : {0.0, 1.0, 2.0}) {
    ok += fails_at_zero(ell, 0.0, v, theta, 1.0 / h);
    ++total;
  }
  return {ok == total && pg.is_umbilic,
          fmt::format("{}/{} rolls fail at t = 0; ellipsoid umbilic k1 - k2 = {:.1e}", ok, total,
                      pg.k1 - pg.k2)};
}

Outcome ac9() {
  const std::vector<SurfaceChart> charts = {make_ellipsoid(1.5, 1.0, 0.75, true), make_torus(2.0, 1.0),
                                            make_unduloid(1.0, 0.25)};
  auto g = oracle::rng(9);
  int points = 0, roots = 0;
  double worst = 0.0;
  while (points < 100) {
    const SurfaceChart& chart = charts[static_cast<std::size_t>(points) % charts.size()];
    const Vec2 uv = random_point(chart, g);
    const PointGeometry pg = evaluate_point_geometry(chart, uv.x(), uv.y());
    const double h = pg.mean_curvature();
    if (umbilic(pg) || std::abs(h) < 1e-3) continue;
    ++points;
    // kappa_n and tau_g from the Darboux formulas on a chart line through p.
    auto darboux = [&](double th) {
      const Vec2 d = pg.direction_uv(th);
      return darboux_data(sample_path(chart, PathJet{uv.x(), uv.y(), d.x(), d.y(), 0, 0}, 0.0));
    };
    auto f = [&](double th) { return darboux(th).kappa_n - h; };
    const int n = 720;
    for (int i = 0; i < n; ++i) {
      // Half-cell offset keeps the exact roots pi/4 and 3pi/4 off the grid nodes.
      double lo = kPi * (i + 0.5) / n, hi = kPi * (i + 1.5) / n;
      double flo = f(lo);
      if (flo * f(hi) > 0) continue;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      const double th = 0.5 * (lo + hi);
      const DarbouxTriple d = darboux(th);
      if (std::abs(d.kappa_n - h) >= 1e-9) continue;
      ++roots;
      worst = std::max(worst, std::abs(std::abs(d.tau_g) - 0.5 * (pg.k1 - pg.k2)));
    }
  }
  return {worst < 1e-9 && roots == 2 * points,
          fmt::format("{} roots at {} points; max ||tau_g| - (k1-k2)/2| = {:.3e}", roots, points, worst)};
}

Outcome ac10() {
  const SurfaceChart cat = make_catenoid(1.0);
  auto g = oracle::rng(10);
  const auto radii = RadiusRange{0.01, 100.0, 20, true}.values();
  const auto dirs = even_directions(8);
  int aniso = 0, total = 0, points = 0;
  double min_spread = 1e300;
  while (points < 10) {
    const Vec2 uv = random_point(cat, g);
    if (umbilic(evaluate_point_geometry(cat, uv.x(), uv.y()))) continue;
    ++points;
    for (double r : radii) {
      const auto rep = isotropy_test(cat, uv.x(), uv.y(), r, dirs);
      aniso += rep.verdict == Verdict::Anisotropic;
      min_spread = std::min(min_spread, rep.spread_closed);
      ++total;
    }
  }
  return {aniso == total, fmt::format("{}/{} anisotropic; smallest spread {:.3e}", aniso, total, min_spread)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}};
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fmt::print("{} {} {} ({:.1f} s)\n", name, o.pass ? "PASS" : "FAIL", o.detail, secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures;
}
