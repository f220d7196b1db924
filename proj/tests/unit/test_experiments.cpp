#include "support/oracles.hpp"

#include <ballroll/experiments.hpp>
#include <ballroll/surfaces.hpp>

#include <doctest.h>

#include <numbers>
#include <sstream>

#include <json.hpp>

using namespace ballroll;

namespace {

constexpr double kPi = std::numbers::pi;

// Squared speed written out from the Darboux form with Euler's formulas,
// independently of the library.
double reference_speed_squared(double k1, double k2, double theta, double r) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double kn = k1 * c * c + k2 * s * s;
  const double tg = (k2 - k1) * s * c;
  return (1 - r * kn) * (1 - r * kn) + r * r * tg * tg;
}

const std::vector<double> kThreeDirs = {0.0, kPi / 3, 2 * kPi / 3};

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("speed_squared examples") {
    for (double th : {0.0, 0.4, 2.0}) {
      CHECK(speed_squared(0.0, 0.0, th, 1.7) == 1.0);
      CHECK(speed_squared(1.0, 1.0, th, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
      CHECK(speed_squared(1.0, 0.0, th, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(std::abs(speed_squared(1.0, 0.0, 0.0, 1.0)) < 1e-15);
    CHECK(speed_squared(1.0, 0.0, kPi / 2, 1.0) == doctest::Approx(1.0));
    CHECK(cos2_coefficient(1.0, 0.0, 1.5) == doctest::Approx(-0.75));
  }

  TEST_CASE("the two closed forms agree") {
    auto g = oracle::rng(5);
    for (int i = 0; i < 1000; ++i) {
      double k1 = oracle::uniform(g, -3, 3), k2 = oracle::uniform(g, -3, 3);
      if (k1 < k2) std::swap(k1, k2);
      const double th = oracle::uniform(g, -kPi, kPi);
      const double r = oracle::uniform(g, -2, 2);
      const EulerCurvatures e = euler_curvatures(k1, k2, th);
      const double a = speed_squared(k1, k2, th, r);
      const double b = speed_squared_from_darboux(e.kappa_n, e.tau_g, r);
      CHECK(std::abs(a - b) < 1e-12);
      CHECK(std::abs(a - reference_speed_squared(k1, k2, th, r)) < 1e-12);
      CHECK(a >= -1e-12);
    }
  }

  TEST_CASE("speed is pi-periodic in the direction") {
    auto g = oracle::rng(9);
    for (int i = 0; i < 200; ++i) {
      const double k1 = oracle::uniform(g, 0, 2), k2 = oracle::uniform(g, -2, 0);
      const double r = oracle::uniform(g, -2, 2);
      const double th = static_cast<double>(i) / 64.0;
      const double a = speed_squared(k1, k2, th, r), b = speed_squared(k1, k2, th + kPi, r);
      // theta + pi is not exact in floating point; the difference is rounding only.
      CHECK(std::abs(a - b) < 1e-14 * std::max(1.0, a));
    }
  }

  TEST_CASE("simulated initial speed") {
    const SurfaceChart sphere = make_sphere(1.0);
    for (double th : {0.0, 1.0, 2.5}) {
      CHECK(std::abs(initial_speed_simulated(sphere, 0.3, 0.2, th, 0.5) - 0.5) < 1e-5);
      CHECK(std::abs(initial_speed_simulated(make_plane(), 0.3, 0.2, th, 1.0) - 1.0) < 1e-6);
    }
    try {
      (void)initial_speed_simulated(sphere, 0.3, 0.2, 0.7, 1.0);
      FAIL("expected NotRolling");
    } catch (const NotRollingError& e) {
      CHECK(e.t() == 0.0);
    }
  }

  TEST_CASE("closed form against simulation at 50 random configurations") {
    const std::vector<SurfaceChart> charts = {make_sphere(1.0), make_cylinder(1.0),
                                              make_ellipsoid(1.5, 1.0, 0.75), make_torus(2, 1),
                                              make_unduloid(1.0, 0.25)};
    auto g = oracle::rng(13);
    int done = 0;
    while (done < 50) {
      const SurfaceChart& chart = charts[static_cast<std::size_t>(done) % charts.size()];
      const double u = oracle::uniform(g, -1, 1), v = oracle::uniform(g, -1, 1);
      const double th = oracle::uniform(g, 0, kPi);
      const double r = oracle::uniform(g, -2, 2);
      const PointGeometry pg = evaluate_point_geometry(chart, u, v);
      const EulerCurvatures e = euler_curvatures(pg, th);
      // Admissible: rolling exists at the start with margin.
      if (std::max(std::abs(e.kappa_n - 1 / r), std::abs(e.tau_g)) < 1e-3) continue;
      const double sim = initial_speed_simulated(chart, u, v, th, r);
      CHECK(std::abs(sim - std::sqrt(speed_squared(pg, th, r))) < 1e-4);
      ++done;
    }
  }

  TEST_CASE("isotropy examples") {
    SUBCASE("unduloid with r = 1/H") {
      const IsotropyReport rep = isotropy_test(make_unduloid(1.0, 0.25), 0.4, 0.1, 1.0, kThreeDirs);
      CHECK_FALSE(rep.geometry.is_umbilic);
      CHECK(rep.verdict == Verdict::Isotropic);
      CHECK(rep.relation == IsotropyRelation::ROneOverH);
      CHECK(rep.spread_closed < 1e-8);
    }
    SUBCASE("ellipsoid with r != 1/h") {
      const SurfaceChart ell = make_ellipsoid(1.5, 1.0, 0.75, true);
      const PointGeometry pg = evaluate_point_geometry(ell, 0.4, 0.5);
      const double r = 0.5 / pg.mean_curvature();
      IsotropyOptions opts;
      opts.simulate = true;
      const IsotropyReport rep = isotropy_test(ell, 0.4, 0.5, r, kThreeDirs, opts);
      CHECK(rep.verdict == Verdict::Anisotropic);
      CHECK(rep.simulated_verdict == Verdict::Anisotropic);
      CHECK(rep.relation == IsotropyRelation::Neither);
      const double c = r * (pg.k2 - pg.k1) * (2 - r * (pg.k1 + pg.k2));
      CHECK(rep.coefficient_closed == doctest::Approx(c).epsilon(1e-12));
      CHECK(std::abs(rep.coefficient_fitted - c) < 1e-6);
    }
    SUBCASE("sphere is isotropic for every admissible r") {
      for (double r : {0.3, -1.0, 2.5}) {
        const IsotropyReport rep = isotropy_test(make_sphere(1.0), 0.1, 0.2, r, kThreeDirs);
        CHECK(rep.verdict == Verdict::Isotropic);
        CHECK(rep.relation == IsotropyRelation::Umbilic);
      }
    }
    SUBCASE("fewer than three nonparallel directions") {
      for (const std::vector<double>& dirs :
           {std::vector<double>{0.0, 1.0}, std::vector<double>{0.0, kPi, 1.0, 1.0 + kPi},
            std::vector<double>{0.3, 0.3 + 2 * kPi, 1.2}}) {
        try {
          (void)isotropy_test(make_sphere(1.0), 0.1, 0.2, 0.5, dirs);
          FAIL("expected BadDirections");
        } catch (const Error& e) {
          CHECK(e.kind() == ErrorKind::BadDirections);
        }
      }
    }
  }

  TEST_CASE("three agreeing directions imply agreement everywhere") {
    auto g = oracle::rng(21);
    for (int trial = 0; trial < 50; ++trial) {
      double k1 = oracle::uniform(g, -2, 2), k2 = oracle::uniform(g, -2, 2);
      if (k1 < k2) std::swap(k1, k2);
      // Alternate between isotropic radii and generic ones.
      const double r = (trial % 2 == 0 && std::abs(k1 + k2) > 0.1) ? 2 / (k1 + k2)
                                                                    : oracle::uniform(g, -2, 2);
      std::vector<double> three;
      for (double th : kThreeDirs) three.push_back(std::sqrt(speed_squared(k1, k2, th, r)));
      const double spread3 = *std::max_element(three.begin(), three.end()) -
                             *std::min_element(three.begin(), three.end());
      if (spread3 >= 1e-10) continue;
      for (int i = 0; i < 64; ++i) {
        const double th = oracle::uniform(g, -10, 10);
        CHECK(std::abs(std::sqrt(speed_squared(k1, k2, th, r)) - three[0]) < 1e-9);
      }
    }
  }

  TEST_CASE("isotropy verdict matches the pointwise predicate") {
    const std::vector<SurfaceChart> charts = {make_sphere(1.0), make_ellipsoid(1.5, 1.0, 0.75),
                                              make_torus(2, 1), make_unduloid(1.0, 0.25),
                                              make_cylinder(1.0)};
    auto g = oracle::rng(31);
    for (int i = 0; i < 60; ++i) {
      const SurfaceChart& chart = charts[static_cast<std::size_t>(i) % charts.size()];
      const double u = oracle::uniform(g, -1, 1), v = oracle::uniform(g, -1, 1);
      const PointGeometry pg = evaluate_point_geometry(chart, u, v);
      const double h = pg.mean_curvature();
      const double r = (i % 3 == 0 && std::abs(h) > 1e-3) ? 1 / h : oracle::uniform(g, -2, 2);
      const IsotropyReport rep = isotropy_test(chart, u, v, r, kThreeDirs);
      const bool predicate = (pg.k1 - pg.k2 < umbilic_tolerance(pg.k1, pg.k2)) ||
                             std::abs(2 - r * (pg.k1 + pg.k2)) < 1e-8;
      CHECK((rep.verdict == Verdict::Isotropic) == predicate);
    }
  }

  TEST_CASE("umbilic points do not roll the ball of radius 1/h") {
    const SurfaceChart sphere = make_sphere(2.0);
    auto g = oracle::rng(37);
    for (int i = 0; i < 10; ++i) {
      const double u = oracle::uniform(g, -3, 3), v = oracle::uniform(g, -1.2, 1.2);
      const double th = oracle::uniform(g, 0, kPi);
      try {
        (void)initial_speed_simulated(sphere, u, v, th, 2.0);
        FAIL("expected NotRolling");
      } catch (const NotRollingError& e) {
        CHECK(e.t() == 0.0);
      }
    }
  }

  TEST_CASE("cmc_radius") {
    CHECK(*cmc_radius(evaluate_point_geometry(make_cylinder(1.0), 0.2, 0.1)) ==
          doctest::Approx(2.0));
    CHECK_FALSE(cmc_radius(evaluate_point_geometry(make_catenoid(1.0), 0.2, 0.4)).has_value());
    CHECK(*cmc_radius(evaluate_point_geometry(make_sphere(3.0), 0.2, 0.1)) ==
          doctest::Approx(3.0));
    const auto und = make_unduloid(0.5, 0.4);
    CHECK(*cmc_radius(evaluate_point_geometry(und, 1.3, 0.0)) == doctest::Approx(2.0).epsilon(1e-8));
  }

  TEST_CASE("constant-speed classification") {
    const ParamRegion cyl_region{-kPi, kPi, -2.0, 2.0, 6, 5};
    SUBCASE("cylinder with r = 2R") {
      const auto c = classify_constant_speed(make_cylinder(1.0), cyl_region, 2.0);
      CHECK(c.kind == SpeedClass::Cylinder);
      REQUIRE(c.radius.has_value());
      CHECK(*c.radius == doctest::Approx(1.0));
      CHECK(c.radius_matches == true);
      const auto c2 = classify_constant_speed(make_cylinder(0.5), cyl_region, 1.0);
      CHECK(c2.kind == SpeedClass::Cylinder);
      CHECK(*c2.radius == doctest::Approx(0.5));
    }
    SUBCASE("cylinder with r != 2R") {
      CHECK(classify_constant_speed(make_cylinder(1.0), cyl_region, 1.9).kind ==
            SpeedClass::NotConstant);
    }
    SUBCASE("torus") {
      for (double r : {0.3, 1.0, 2.0, -1.0}) {
        CHECK(classify_constant_speed(make_torus(2, 1), {-1, 1, -1, 1, 5, 5}, r).kind ==
              SpeedClass::NotConstant);
      }
    }
    SUBCASE("plane and sphere") {
      CHECK(classify_constant_speed(make_plane(), {-1, 1, -1, 1, 4, 4}, 1.0).kind ==
            SpeedClass::Plane);
      const auto s = classify_constant_speed(make_sphere(2.0), {-1, 1, -1, 1, 4, 4}, 0.7);
      CHECK(s.kind == SpeedClass::Sphere);
      CHECK(*s.radius == doctest::Approx(2.0));
    }
    SUBCASE("unduloid is not constant speed even at r = 1/H") {
      CHECK(classify_constant_speed(make_unduloid(1.0, 0.25), {-2, 2, -1, 1, 6, 3}, 1.0).kind ==
            SpeedClass::NotConstant);
    }
  }

  TEST_CASE("speed landscape") {
    const std::vector<double> radii = {0.2, 0.5, 0.9, 1.2, 1.6};
    std::vector<double> thetas;
    for (int i = 0; i < 12; ++i) thetas.push_back(kPi * i / 12);
    SUBCASE("sphere: constant in theta") {
      const auto rows = speed_landscape(make_sphere(1.0), 0.2, 0.3, radii, thetas);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].speed_closed ==
              doctest::Approx(rows[i - i % thetas.size()].speed_closed).epsilon(1e-12));
      }
    }
    SUBCASE("non-umbilic point: affine in cos^2 and sign change across 1/h") {
      const SurfaceChart ell = make_ellipsoid(1.5, 1.0, 0.75, true);
      const PointGeometry pg = evaluate_point_geometry(ell, 0.4, 0.5);
      const double inv_h = 1 / pg.mean_curvature();
      const std::vector<double> rs = {0.5 * inv_h, 0.9 * inv_h, 1.1 * inv_h, 1.5 * inv_h};
      const auto rows = speed_landscape(ell, 0.4, 0.5, rs, thetas, false, 3);
      for (std::size_t k = 0; k < rs.size(); ++k) {
        const auto* row = &rows[k * thetas.size()];
        const double l0 = row[0].speed_closed * row[0].speed_closed;
        const double l90 = row[6].speed_closed * row[6].speed_closed;
        for (std::size_t i = 0; i < thetas.size(); ++i) {
          const double c2 = std::cos(thetas[i]) * std::cos(thetas[i]);
          CHECK(row[i].speed_closed * row[i].speed_closed ==
                doctest::Approx(l90 + (l0 - l90) * c2).epsilon(1e-12));
        }
        // Oracle sign of the theta variation: r (k2 - k1)(2 - r (k1 + k2)).
        const double r = rs[k];
        const double sign = r * (pg.k2 - pg.k1) * (2 - r * (pg.k1 + pg.k2));
        CHECK((l0 - l90) * sign > 0);
        CHECK(((l0 - l90) > 0) == (r > inv_h));
      }
    }
    SUBCASE("parallel evaluation is deterministic") {
      const auto a = speed_landscape(make_torus(2, 1), 0.2, 0.3, radii, thetas, true, 1);
      const auto b = speed_landscape(make_torus(2, 1), 0.2, 0.3, radii, thetas, true, 4);
      std::ostringstream sa, sb;
      write_speed_csv(sa, a);
      write_speed_csv(sb, b);
      CHECK(sa.str() == sb.str());
      CHECK(sa.str().substr(0, sa.str().find('\n')) ==
            "u,v,r,theta,speed_closed,speed_simulated");
    }
  }

  TEST_CASE("catenoid is anisotropic for every r") {
    const SurfaceChart cat = make_catenoid(1.0);
    for (double v : {-1.0, 0.0, 0.7}) {
      const PointGeometry pg = evaluate_point_geometry(cat, 0.3, v);
      for (int k = 0; k < 20; ++k) {
        const double r = 0.01 * std::pow(1000.0, k / 19.0);
        const IsotropyReport rep = isotropy_test(cat, 0.3, v, r, kThreeDirs);
        CHECK(rep.verdict == Verdict::Anisotropic);
        CHECK(rep.coefficient_closed == doctest::Approx(2 * r * (pg.k2 - pg.k1)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("JSON reports") {
    std::ostringstream os;
    write_classification_json(
        os, classify_constant_speed(make_cylinder(1.0), {-1, 1, -1, 1, 3, 3}, 2.0));
    const auto j = nlohmann::json::parse(os.str());
    CHECK(j["verdict"] == "Cylinder");
    CHECK(j["R"].get<double>() == doctest::Approx(1.0));
    CHECK(j["r_equals_2R"] == true);
    CHECK(j.contains("signature"));
    std::ostringstream is;
    write_isotropy_json(is, isotropy_test(make_sphere(1.0), 0, 0, 0.5, kThreeDirs));
    const auto k = nlohmann::json::parse(is.str());
    CHECK(k["verdict"] == "Isotropic");
    CHECK(k["relation"] == "umbilic");
  }
}
