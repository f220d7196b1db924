#pragma once

#include <ballroll/chart.hpp>
#include <ballroll/expression.hpp>

#include <memory>
#include <vector>

namespace ballroll {

SurfaceChart make_plane(double half_extent = 100.0);

/// Sphere of radius R parametrized by longitude u and latitude v. With
/// `inward` the normal points to the center and both curvatures are +1/R.
SurfaceChart make_sphere(double radius, bool inward = true);

/// Circular cylinder about the z axis. Inward orientation gives
/// (k1, k2) = (1/R, 0) with e1 circumferential.
SurfaceChart make_cylinder(double radius, bool inward = true, double half_height = 50.0);

/// Ellipsoid x = a cos v cos u, y = b cos v sin u, z = c sin v.
/// The natural normal points outward.
SurfaceChart make_ellipsoid(double a, double b, double c, bool inward = false);

/// Torus with tube radius `minor` around a circle of radius `major`; natural
/// normal points away from the tube axis.
SurfaceChart make_torus(double major, double minor);

/// Catenoid (c cosh(v/c) cos u, c cosh(v/c) sin u, v), v in [-extent*c, extent*c].
SurfaceChart make_catenoid(double c, double extent = 3.0);

/// Meridian of a Delaunay unduloid in arclength s: (x(s), y(s)) with tangent
/// angle phi, solving
///   x' = cos phi,  y' = sin phi,  phi' = cos(phi)/y - 2H,
/// from the neck (0, neck, 0). The rotation surface has mean curvature H
/// with respect to the normal pointing toward the axis at the neck.
class DelaunayProfile {
 public:
  struct State {
    double x, y, phi;
  };

  /// Requires H > 0 and 0 < neck < 1/(2H). Tabulates [-half_length, half_length].
  DelaunayProfile(double H, double neck, double half_length);

  [[nodiscard]] double mean_curvature() const noexcept { return H_; }
  [[nodiscard]] double neck() const noexcept { return neck_; }
  [[nodiscard]] double half_length() const noexcept { return half_length_; }
  [[nodiscard]] double step() const noexcept { return step_; }

  /// State at arclength s, continued from the nearest tabulated node by one
  /// Runge-Kutta step.
  [[nodiscard]] State at(double s) const;
  /// d(phi)/ds at a state.
  [[nodiscard]] double turning_rate(const State& st) const;
  /// Conserved quantity y cos(phi) - H y^2; equals neck - H neck^2 exactly.
  [[nodiscard]] double first_integral(const State& st) const;
  /// Largest first-integral deviation over the table.
  [[nodiscard]] double first_integral_drift() const;

 private:
  double H_;
  double neck_;
  double half_length_;
  double step_ = 0.0;
  std::vector<State> forward_;   // s = k * step
  std::vector<State> backward_;  // s = -k * step
};

/// Unduloid with mean curvature H and neck radius `neck`, chart (s, t) with s
/// the meridian arclength and t the rotation angle about the x axis.
SurfaceChart make_unduloid(double H, double neck);
std::shared_ptr<const DelaunayProfile> make_delaunay_profile(double H, double neck);

/// Graph z = phi(x, y) over a rectangle. Derivatives come from finite
/// differences of the map.
SurfaceChart make_graph(const Expression& height, ParamDomain domain);

}  // namespace ballroll
