#pragma once

#include <ballroll/chart.hpp>
#include <ballroll/geometry.hpp>
#include <ballroll/types.hpp>

#include <functional>
#include <iosfwd>
#include <memory>
#include <utility>

namespace ballroll {

/// Chart coordinates of a curve and their first two derivatives in the
/// curve parameter.
struct PathJet {
  double u = 0.0, v = 0.0;
  double du = 0.0, dv = 0.0;
  double ddu = 0.0, ddv = 0.0;
};

/// Everything about a curve at one parameter value that the Darboux
/// quantities need. Derivatives are with respect to the curve parameter.
struct CurveSample {
  double t = 0.0;
  PathJet path;
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  Vec3 normal_rate = Vec3::Zero();
};

/// Ambient kinematics of the path jet `path` on `chart` at parameter t.
CurveSample sample_path(const SurfaceChart& chart, const PathJet& path, double t);

/// A curve t -> r(u(t), v(t)), t in [0, length], on a host chart.
class SurfaceCurve {
 public:
  using PathFn = std::function<PathJet(double)>;
  using PointPathFn = std::function<Vec2(double)>;

  /// Path with its own derivatives (chain rule is exact).
  SurfaceCurve(SurfaceChart host, PathFn path, double length, bool unit_speed);
  /// Path without derivatives: they are taken by central differences in t
  /// with step 1e-5 * length.
  SurfaceCurve(SurfaceChart host, PointPathFn path, double length, bool unit_speed);

  [[nodiscard]] const SurfaceChart& host() const noexcept { return host_; }
  [[nodiscard]] double length() const noexcept { return length_; }
  [[nodiscard]] bool unit_speed() const noexcept { return unit_speed_; }
  [[nodiscard]] bool has_path_derivatives() const noexcept { return analytic_; }

  [[nodiscard]] PathJet path_jet(double t) const;
  [[nodiscard]] CurveSample sample(double t) const;
  [[nodiscard]] Vec3 point(double t) const;

  /// The restriction to [t0, t1], re-based to start at parameter 0.
  [[nodiscard]] SurfaceCurve subarc(double t0, double t1) const;

 private:
  SurfaceChart host_;
  PathFn path_;
  double length_ = 0.0;
  bool unit_speed_ = false;
  bool analytic_ = true;
};

struct DarbouxTriple {
  double t = 0.0;
  double kappa_g = 0.0;
  double kappa_n = 0.0;
  double tau_g = 0.0;
};

/// kappa_g = <g'', N x g'>, kappa_n = <g'', N>, tau_g = -<N', N x g'>.
DarbouxTriple darboux_data(const SurfaceCurve& curve, double t);
DarbouxTriple darboux_data(const CurveSample& sample);

/// Columns (T, N x T, N) with T the normalized velocity.
Mat3 darboux_frame(const CurveSample& sample);
Mat3 darboux_frame(const SurfaceCurve& curve, double t);

/// Skew generator of the Darboux frame, D' = D * generator^T:
///   [   0     kappa_g  kappa_n ]
///   [ -kappa_g   0     tau_g   ]
///   [ -kappa_n -tau_g    0     ]
Mat3 darboux_generator(double kappa_g, double kappa_n, double tau_g);
Mat3 darboux_generator(const DarbouxTriple& triple);

/// Normal curvature and geodesic torsion of the direction at angle theta from
/// e1 (Euler's formulas).
struct EulerCurvatures {
  double kappa_n = 0.0;
  double tau_g = 0.0;
};
EulerCurvatures euler_curvatures(double k1, double k2, double theta);
EulerCurvatures euler_curvatures(const PointGeometry& pg, double theta);

/// Arclength reparametrization. Arclength is integrated by adaptive
/// Gauss-Kronrod quadrature and inverted by Newton iteration. Throws
/// SingularCurve if the speed drops below the chart's regularity scale.
SurfaceCurve unit_speed_reparametrize(const SurfaceCurve& curve);

/// Arclength of a curve between parameters a and b.
double arclength(const SurfaceCurve& curve, double a, double b);

/// Wraps a user path on [t0, t1] and reparametrizes it by arclength.
SurfaceCurve curve_from_parameter_path(const SurfaceChart& chart, SurfaceCurve::PathFn path,
                                       double t0, double t1);
SurfaceCurve curve_from_parameter_path(const SurfaceChart& chart,
                                       SurfaceCurve::PointPathFn path, double t0, double t1);

struct GeodesicOptions {
  int steps = 2048;
  /// Accept when halving the step moves every node (ambient position and
  /// velocity) by less than this.
  double tolerance = 1e-11;
  int max_halvings = 8;
};

/// Unit-speed geodesic starting at (u0, v0) in the direction at angle theta
/// from e1 (from r_u at umbilics). Throws DomainExit if the geodesic leaves
/// a non-periodic coordinate range before `length`.
SurfaceCurve geodesic_from(const SurfaceChart& chart, double u0, double v0, double theta,
                           double length, const GeodesicOptions& options = {});

/// CSV with header `t,u,v,x,y,z,kappa_g,kappa_n,tau_g`, `samples` rows
/// evenly spaced over [0, length].
void write_curve_csv(std::ostream& out, const SurfaceCurve& curve, int samples);

}  // namespace ballroll
