// Rolls a circular cylinder along a meridian of a catenoid, the cylinder's
// circumferential direction aligned with the meridian, and reports the
// invariant residuals of the resulting motion.

#include <ballroll/io.hpp>
#include <ballroll/rolling.hpp>
#include <ballroll/surfaces.hpp>

#include <iostream>

int main() {
  using namespace ballroll;
  const SurfaceChart catenoid = make_catenoid(1.0);
  const SurfaceChart cylinder = make_cylinder(0.5, true);

  // The meridian u = 0 runs along the principal direction of the catenoid.
  const SurfaceCurve meridian = curve_from_parameter_path(
      catenoid,
      SurfaceCurve::PathFn([](double t) { return PathJet{0.0, t, 0.0, 1.0, 0.0, 0.0}; }), -1.0,
      1.0);

  const Rolling rolling = roll(meridian, ChartRoller{cylinder, 0.0, 0.0, 0.0});
  const MotionResiduals res = motion_residuals(rolling.motion, rolling.anti);
  std::cout << "samples = " << rolling.motion.size() << '\n'
            << "orthogonality = " << format_number(res.orthogonality) << '\n'
            << "no_skid = " << format_number(res.no_skid) << '\n'
            << "no_spin = " << format_number(res.no_spin) << '\n'
            << "omega_agreement = " << format_number(res.omega_agreement) << '\n'
            << "tangency = " << format_number(res.tangency) << '\n';
  return 0;
}
