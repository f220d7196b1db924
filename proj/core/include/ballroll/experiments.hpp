#pragma once

#include <ballroll/chart.hpp>
#include <ballroll/curves.hpp>
#include <ballroll/geometry.hpp>
#include <ballroll/rolling.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ballroll {

// ---------------------------------------------------------------------------
// Closed-form speed of the ball center
//
// Rolling B_r along a curve with normal curvature kappa_n and geodesic
// torsion tau_g, the center moves with squared speed
//   (1 - r kappa_n)^2 + r^2 tau_g^2.
// In the direction at angle theta from e1 this becomes
//   1 + r^2 k2^2 - 2 r k2 + r (k2 - k1)(2 - r (k1 + k2)) cos^2(theta).

double speed_squared_from_darboux(double kappa_n, double tau_g, double r);
double speed_squared(double k1, double k2, double theta, double r);
double speed_squared(const PointGeometry& pg, double theta, double r);

/// The cos^2(theta) coefficient r (k2 - k1)(2 - r (k1 + k2)).
double cos2_coefficient(double k1, double k2, double r);

/// 1/h = 2/(k1 + k2), or nothing at a minimal point (|k1 + k2| below
/// 1e-12 * max(1, |k1|, |k2|)).
std::optional<double> cmc_radius(const PointGeometry& pg);

// ---------------------------------------------------------------------------
// Simulation

struct SimulationOptions {
  /// Length of the rolled geodesic arc.
  double arc = 1e-2;
  GeodesicOptions geodesic{};
  AntiDevelopOptions anti{};
};

/// Rolls B_r along the geodesic from (u, v) at angle theta and
/// differentiates the center trajectory f_t(p + r N_p) at t = 0.
/// Throws NotRolling where the existence condition fails.
double initial_speed_simulated(const SurfaceChart& chart, double u, double v, double theta,
                               double r, const SimulationOptions& options = {});

// ---------------------------------------------------------------------------
// Isotropy

struct SpeedSample {
  double u = 0.0;
  double v = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double t = 0.0;
  double speed_closed = 0.0;
  std::optional<double> speed_simulated;
};

enum class Verdict { Isotropic, Anisotropic };
enum class IsotropyRelation { Umbilic, ROneOverH, Neither };

std::string_view to_string(Verdict v);
std::string_view to_string(IsotropyRelation r);

struct IsotropyOptions {
  bool simulate = false;
  /// Isotropy threshold on max - min of the closed-form speeds.
  double tol_closed = 1e-8;
  /// Same for simulated speeds, which carry integration error.
  double tol_simulated = 1e-4;
  int jobs = 1;
  SimulationOptions simulation{};
};

struct IsotropyReport {
  PointGeometry geometry;
  double r = 0.0;
  std::vector<SpeedSample> samples;
  double spread_closed = 0.0;
  std::optional<double> spread_simulated;
  Verdict verdict = Verdict::Anisotropic;
  /// Verdict from simulated speeds at tol_simulated, when simulated.
  std::optional<Verdict> simulated_verdict;
  IsotropyRelation relation = IsotropyRelation::Neither;
  /// cos^2 coefficient of the speed-squared profile: closed form, and a
  /// least-squares fit of a + c cos^2(theta) to the measured speeds
  /// (simulated when available).
  double coefficient_closed = 0.0;
  double coefficient_fitted = 0.0;
};

/// Needs at least three directions that are pairwise nonparallel (distinct
/// modulo pi); throws BadDirections otherwise.
IsotropyReport isotropy_test(const SurfaceChart& chart, double u, double v, double r,
                             std::span<const double> thetas, const IsotropyOptions& options = {});

// ---------------------------------------------------------------------------
// Constant-speed classification

enum class SpeedClass { Plane, Sphere, Cylinder, NotConstant };
std::string_view to_string(SpeedClass c);

struct ConstantSpeedClassification {
  SpeedClass kind = SpeedClass::NotConstant;
  /// Sphere or cylinder radius.
  std::optional<double> radius;
  /// For a cylinder, whether r = 2/(k1 + k2) (r = 2R with inward normal).
  std::optional<bool> radius_matches;
  double r = 0.0;
  double speed_min = 0.0;
  double speed_max = 0.0;
  double k1_min = 0.0, k1_max = 0.0;
  double k2_min = 0.0, k2_max = 0.0;
  std::size_t points = 0;
  std::size_t directions = 0;
};

struct ClassifyOptions {
  int directions = 8;
  double tol_speed = 1e-8;
  /// Relative tolerance for "zero" and "constant" curvature.
  double tol_curvature = 1e-6;
  int jobs = 1;
};

ConstantSpeedClassification classify_constant_speed(const SurfaceChart& chart,
                                                    const ParamRegion& grid, double r,
                                                    const ClassifyOptions& options = {});

// ---------------------------------------------------------------------------
// Landscapes and output

std::vector<SpeedSample> speed_landscape(const SurfaceChart& chart, double u, double v,
                                         std::span<const double> radii,
                                         std::span<const double> thetas, bool simulate = false,
                                         int jobs = 1, const SimulationOptions& simulation = {});

/// Header `u,v,r,theta,speed_closed,speed_simulated`; an empty field when a
/// sample was not simulated.
void write_speed_csv(std::ostream& out, std::span<const SpeedSample> samples);

void write_isotropy_json(std::ostream& out, const IsotropyReport& report);
void write_classification_json(std::ostream& out, const ConstantSpeedClassification& c);
void write_point_geometry_json(std::ostream& out, const PointGeometry& pg);

}  // namespace ballroll
