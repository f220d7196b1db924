#pragma once

#include <ballroll/chart.hpp>
#include <ballroll/curves.hpp>
#include <ballroll/types.hpp>

#include <functional>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

namespace ballroll {

// ---------------------------------------------------------------------------
// Rolling surfaces

/// Sphere of radius |r| centered at p + r N_p. Every curve on it has normal
/// curvature 1/r and zero geodesic torsion with respect to the normal that
/// equals N_p at the contact point.
struct BallRoller {
  double r = 1.0;
};

struct PlaneRoller {};

/// A chart-defined rolling surface. It is first moved rigidly so that the
/// chart point (u0, v0) sits at p, its normal matches N_p, and the direction
/// at `angle` from its own e1 matches the contact direction.
struct ChartRoller {
  SurfaceChart chart;
  double u0 = 0.0;
  double v0 = 0.0;
  double angle = 0.0;
};

using Roller = std::variant<BallRoller, PlaneRoller, ChartRoller>;

// ---------------------------------------------------------------------------
// Anti-development

struct AntiDevelopOptions {
  double steps_per_length = 2048.0;
  int min_steps = 32;
  /// Accept when halving the step moves every node by less than this.
  double tolerance = 1e-7;
  int max_halvings = 6;
};

/// The curve on the rolling surface whose geodesic curvature equals that of
/// the contact curve, starting at p with velocity v and normal N_p.
struct AntiDevelopment {
  Roller roller;
  Vec3 origin = Vec3::Zero();
  double step = 0.0;
  std::vector<double> ts;
  std::vector<Vec3> points;
  /// Darboux frames (T~, N~ x T~, N~) along the curve; frames[0] = D_0.
  std::vector<Mat3> frames;
  /// Normal of the rolling surface at each point, from its own geometry.
  std::vector<Vec3> surface_normals;
  /// kappa_g is the prescribed one; kappa_n and tau_g are those of the
  /// rolling surface along the curve.
  std::vector<DarbouxTriple> triples;
  /// Largest node displacement between the accepted and the half-resolution
  /// solution.
  double richardson_change = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return ts.size(); }
  [[nodiscard]] double length() const noexcept { return ts.empty() ? 0.0 : ts.back(); }
};

using GeodesicCurvatureFn = std::function<double(double)>;

/// Integrates the anti-development over [0, length] with fixed-step RK4,
/// halving the step until the Richardson change is below the tolerance.
/// Ball and plane rollers integrate the ambient frame equation
/// D~' = D~ Lambda~^T with re-projection and re-orthonormalization after
/// every step; chart rollers integrate a prescribed-geodesic-curvature curve
/// in chart coordinates. Throws StepFailure or DomainExit.
AntiDevelopment anti_develop(const Roller& roller, const GeodesicCurvatureFn& kappa_g, double length,
                             const Vec3& p, const Vec3& v, const Vec3& normal_p,
                             const AntiDevelopOptions& options = {});

/// Anti-develops a unit-speed contact curve from its own start frame.
AntiDevelopment anti_develop(const Roller& roller, const SurfaceCurve& curve,
                             const AntiDevelopOptions& options = {});

/// Geodesic curvature of the anti-development measured from its sampled
/// points by fourth-order finite differences against the rolling surface's
/// normals (an independent check of the integration). Uses a node stride so
/// the effective spacing is at least `min_spacing` when the sample count
/// allows it.
std::vector<DarbouxTriple> measured_anti_development_curvature(const AntiDevelopment& ad,
                                                               double min_spacing = 1e-3);

// ---------------------------------------------------------------------------
// Existence

struct RollingExistence {
  bool exists = true;
  std::optional<double> violation_t;
  /// Smallest max(|kappa_n - kappa_n~|, |tau_g - tau_g~|) over the samples
  /// and the piecewise-linear interpolant between them.
  double min_gap = 0.0;
  double tolerance = 0.0;
};

/// Rolling exists iff kappa_n and tau_g never simultaneously equal those of
/// the anti-development. Checked at the samples and on the linear
/// interpolant between neighbouring samples, with tolerance
/// 1e-9 * max(1, largest curvature magnitude).
RollingExistence rolling_exists(const std::vector<DarbouxTriple>& curve,
                                const std::vector<DarbouxTriple>& anti);

// ---------------------------------------------------------------------------
// Rigid motions

/// Sampled family f_t(x) = A_t x + b_t with the contact data it was built
/// from.
struct RigidMotionFamily {
  double step = 0.0;
  std::vector<double> ts;
  std::vector<Mat3> rotations;
  std::vector<Vec3> translations;
  std::vector<Vec3> contacts;
  std::vector<Vec3> normals;
  std::vector<Mat3> frames;
  /// Angular velocity recovered from Q_t = D_t (Lambda~_t - Lambda_t) D_t^T.
  std::vector<Vec3> angular_velocities;
  std::vector<DarbouxTriple> curve_triples;
  std::vector<DarbouxTriple> roller_triples;

  [[nodiscard]] std::size_t size() const noexcept { return ts.size(); }
  [[nodiscard]] Vec3 apply(std::size_t i, const Vec3& x) const {
    return rotations[i] * x + translations[i];
  }
};

/// A_t = D_t D~_t^T, b_t = g(t) - A_t g~(t). Throws NotRolling (with the
/// earliest violating t) when the existence condition fails.
RigidMotionFamily build_motion(const SurfaceCurve& curve, const AntiDevelopment& ad);

struct Rolling {
  AntiDevelopment anti;
  RigidMotionFamily motion;
};

/// anti_develop followed by build_motion.
Rolling roll(const SurfaceCurve& curve, const Roller& roller,
             const AntiDevelopOptions& options = {});

/// (tau_g - tau_g~, kappa_n~ - kappa_n, 0): angular velocity in the Darboux
/// frame of the contact curve.
Vec3 angular_velocity_components(const DarbouxTriple& curve, const DarbouxTriple& anti);

/// w with Q x = w x x. Throws InvalidArgument when |Q + Q^T| > tol * max(1, |Q|).
Vec3 axial_vector(const Mat3& Q, double tol = 1e-8);
Mat3 skew(const Vec3& w);

// ---------------------------------------------------------------------------
// Instantaneous motion

struct Standstill {};
struct Translation {
  Vec3 velocity;
};
struct Rotation {
  Vec3 center;
  Vec3 omega;
};
using MotionClass = std::variant<Standstill, Translation, Rotation>;

/// Classifies x -> Q x + v. The rotation center is the point of the
/// instantaneous axis closest to `contact`. Throws NoCenter when Q != 0 but
/// Q x + v = 0 has no solution (a screw motion): the velocity component along
/// the axis exceeds max(tol, 1e-9 max(1, |v|)).
MotionClass classify_instantaneous(const Mat3& Q, const Vec3& v, const Vec3& contact,
                                   double tol = 1e-10);

// ---------------------------------------------------------------------------
// Ball center and verification

struct CenterTrajectory {
  std::vector<double> ts;
  /// f_t(p + r N_p).
  std::vector<Vec3> via_motion;
  /// g(t) + r N(t).
  std::vector<Vec3> via_normal;
  double max_discrepancy = 0.0;
};

CenterTrajectory center_trajectory(const RigidMotionFamily& family, double r);

/// Speed of the center at t = 0 from the one-sided fourth-order stencil over
/// the first five samples of f_t(p + r N_p).
double initial_center_speed(const RigidMotionFamily& family, double r);

/// Residuals of the rolling invariants, computed by finite differences of
/// the sampled family (independent of the Darboux formula for omega).
struct MotionResiduals {
  double orthogonality = 0.0;     // max |A^T A - I|
  double determinant = 0.0;       // max |det A - 1|
  double initial = 0.0;           // |A_0 - I| + |b_0|
  double no_spin = 0.0;           // max |<omega, N>|
  double no_skid = 0.0;           // max |A' A^T g + b' - A' A^T b|
  double omega_agreement = 0.0;   // max |axial(A' A^T) - D (tau-tau~, kn~-kn, 0)|
  double formula_agreement = 0.0; // max |omega from Q - D (components)|
  double tangency = 0.0;          // max |A N~ - N|
};

MotionResiduals motion_residuals(const RigidMotionFamily& family, const AntiDevelopment& ad);

/// CSV header: t,A00..A22,b_x,b_y,b_z,omega_x,omega_y,omega_z,contact_x,contact_y,contact_z.
void write_motion_csv(std::ostream& out, const RigidMotionFamily& family);
/// JSON array of objects with the CSV column names as keys.
void write_motion_json(std::ostream& out, const RigidMotionFamily& family);

}  // namespace ballroll
