#include <ballroll/ode.hpp>
#include <ballroll/surfaces.hpp>
#include <ballroll/types.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

namespace ballroll {

namespace {

constexpr double kPi = std::numbers::pi;

ParamDomain longitude_latitude() {
  return ParamDomain{-kPi, kPi, -0.5 * kPi, 0.5 * kPi, true, false};
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    fail(ErrorKind::InvalidArgument, fmt::format("{} must be positive, got {}", what, value));
  }
}

PrincipalPair ordered(double a, double b) { return a >= b ? PrincipalPair{a, b} : PrincipalPair{b, a}; }

}  // namespace

SurfaceChart make_plane(double half_extent) {
  require_positive(half_extent, "plane extent");
  auto map = [](double u, double v) { return Vec3(u, v, 0.0); };
  auto jet = [](double u, double v) {
    ChartJet j;
    j.r = Vec3(u, v, 0.0);
    j.r_u = Vec3::UnitX();
    j.r_v = Vec3::UnitY();
    return j;
  };
  SurfaceChart chart("plane", {-half_extent, half_extent, -half_extent, half_extent}, map, jet);
  chart.with_closed_form([](double, double) { return PrincipalPair{0.0, 0.0}; });
  return chart;
}

SurfaceChart make_sphere(double radius, bool inward) {
  require_positive(radius, "sphere radius");
  const double R = radius;
  auto map = [R](double u, double v) {
    return Vec3(R * std::cos(v) * std::cos(u), R * std::cos(v) * std::sin(u), R * std::sin(v));
  };
  auto jet = [R](double u, double v) {
    const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
    ChartJet j;
    j.r = R * Vec3(cv * cu, cv * su, sv);
    j.r_u = R * Vec3(-cv * su, cv * cu, 0.0);
    j.r_v = R * Vec3(-sv * cu, -sv * su, cv);
    j.r_uu = R * Vec3(-cv * cu, -cv * su, 0.0);
    j.r_uv = R * Vec3(sv * su, -sv * cu, 0.0);
    j.r_vv = R * Vec3(-cv * cu, -cv * su, -sv);
    return j;
  };
  SurfaceChart chart(fmt::format("sphere(R={})", R), longitude_latitude(), map, jet, R);
  // Natural normal is outward.
  chart.with_closed_form([R](double, double) { return PrincipalPair{-1.0 / R, -1.0 / R}; });
  return inward ? chart.flipped() : chart;
}

SurfaceChart make_cylinder(double radius, bool inward, double half_height) {
  require_positive(radius, "cylinder radius");
  require_positive(half_height, "cylinder height");
  const double R = radius;
  auto map = [R](double u, double v) { return Vec3(R * std::cos(u), R * std::sin(u), v); };
  auto jet = [R](double u, double v) {
    const double cu = std::cos(u), su = std::sin(u);
    ChartJet j;
    j.r = Vec3(R * cu, R * su, v);
    j.r_u = Vec3(-R * su, R * cu, 0.0);
    j.r_v = Vec3::UnitZ();
    j.r_uu = Vec3(-R * cu, -R * su, 0.0);
    return j;
  };
  SurfaceChart chart(fmt::format("cylinder(R={})", R),
                     ParamDomain{-kPi, kPi, -half_height, half_height, true, false}, map, jet, R);
  chart.with_closed_form([R](double, double) { return PrincipalPair{0.0, -1.0 / R}; });
  return inward ? chart.flipped() : chart;
}

SurfaceChart make_ellipsoid(double a, double b, double c, bool inward) {
  require_positive(a, "ellipsoid a");
  require_positive(b, "ellipsoid b");
  require_positive(c, "ellipsoid c");
  const Vec3 axes(a, b, c);
  auto map = [axes](double u, double v) {
    return Vec3(axes[0] * std::cos(v) * std::cos(u), axes[1] * std::cos(v) * std::sin(u),
                axes[2] * std::sin(v));
  };
  auto jet = [axes](double u, double v) {
    const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
    const auto scale = axes.asDiagonal();
    ChartJet j;
    j.r = scale * Vec3(cv * cu, cv * su, sv);
    j.r_u = scale * Vec3(-cv * su, cv * cu, 0.0);
    j.r_v = scale * Vec3(-sv * cu, -sv * su, cv);
    j.r_uu = scale * Vec3(-cv * cu, -cv * su, 0.0);
    j.r_uv = scale * Vec3(sv * su, -sv * cu, 0.0);
    j.r_vv = scale * Vec3(-cv * cu, -cv * su, -sv);
    return j;
  };
  SurfaceChart chart(fmt::format("ellipsoid(a={},b={},c={})", a, b, c), longitude_latitude(), map,
                     jet, std::min({a, b, c}));
  return inward ? chart.flipped() : chart;
}

SurfaceChart make_torus(double major, double minor) {
  require_positive(major, "torus major radius");
  require_positive(minor, "torus minor radius");
  if (!(minor < major)) fail(ErrorKind::InvalidArgument, "torus needs minor < major");
  const double R = major, rho = minor;
  auto map = [R, rho](double u, double v) {
    const double w = R + rho * std::cos(v);
    return Vec3(w * std::cos(u), w * std::sin(u), rho * std::sin(v));
  };
  auto jet = [R, rho](double u, double v) {
    const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
    const double w = R + rho * cv;
    ChartJet j;
    j.r = Vec3(w * cu, w * su, rho * sv);
    j.r_u = Vec3(-w * su, w * cu, 0.0);
    j.r_v = rho * Vec3(-sv * cu, -sv * su, cv);
    j.r_uu = Vec3(-w * cu, -w * su, 0.0);
    j.r_uv = rho * Vec3(sv * su, -sv * cu, 0.0);
    j.r_vv = rho * Vec3(-cv * cu, -cv * su, -sv);
    return j;
  };
  SurfaceChart chart(fmt::format("torus(R={},r={})", R, rho),
                     ParamDomain{-kPi, kPi, -kPi, kPi, true, true}, map, jet, rho);
  chart.with_closed_form([R, rho](double, double v) {
    return ordered(-1.0 / rho, -std::cos(v) / (R + rho * std::cos(v)));
  });
  return chart;
}

SurfaceChart make_catenoid(double c, double extent) {
  require_positive(c, "catenoid waist");
  require_positive(extent, "catenoid extent");
  auto map = [c](double u, double v) {
    const double w = c * std::cosh(v / c);
    return Vec3(w * std::cos(u), w * std::sin(u), v);
  };
  auto jet = [c](double u, double v) {
    const double cu = std::cos(u), su = std::sin(u);
    const double ch = std::cosh(v / c), sh = std::sinh(v / c);
    ChartJet j;
    j.r = Vec3(c * ch * cu, c * ch * su, v);
    j.r_u = Vec3(-c * ch * su, c * ch * cu, 0.0);
    j.r_v = Vec3(sh * cu, sh * su, 1.0);
    j.r_uu = Vec3(-c * ch * cu, -c * ch * su, 0.0);
    j.r_uv = Vec3(-sh * su, sh * cu, 0.0);
    j.r_vv = Vec3(ch * cu / c, ch * su / c, 0.0);
    return j;
  };
  SurfaceChart chart(fmt::format("catenoid(c={})", c),
                     ParamDomain{-kPi, kPi, -extent * c, extent * c, true, false}, map, jet, c);
  chart.with_closed_form([c](double, double v) {
    const double k = 1.0 / (c * std::cosh(v / c) * std::cosh(v / c));
    return PrincipalPair{k, -k};
  });
  return chart;
}

// ---------------------------------------------------------------------------
// Delaunay unduloid

namespace {

Vec3 profile_rhs(double H, const Vec3& st) {
  return Vec3(std::cos(st[2]), std::sin(st[2]), std::cos(st[2]) / st[1] - 2.0 * H);
}

}  // namespace

DelaunayProfile::DelaunayProfile(double H, double neck, double half_length)
    : H_(H), neck_(neck), half_length_(half_length) {
  require_positive(H, "unduloid mean curvature");
  require_positive(neck, "unduloid neck");
  require_positive(half_length, "unduloid length");
  if (!(neck < 0.5 / H)) {
    fail(ErrorKind::InvalidArgument,
         fmt::format("unduloid neck {} must be below 1/(2H) = {}", neck, 0.5 / H));
  }

  const auto rhs = [H](double, const Vec3& st) { return profile_rhs(H, st); };
  const double target = neck - H * neck * neck;
  // Refine until the conserved quantity is held to 1e-12; h stays exactly H
  // in the chart because curvature is read from the state, not differenced.
  for (double step = std::min(1e-2, 0.05 * neck);; step *= 0.5) {
    const auto n = static_cast<std::size_t>(std::ceil(half_length / step));
    step_ = half_length / static_cast<double>(n);
    forward_.assign(1, State{0.0, neck, 0.0});
    backward_.assign(1, State{0.0, neck, 0.0});
    Vec3 fwd(0.0, neck, 0.0), bwd(0.0, neck, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      fwd = rk4_step(rhs, 0.0, fwd, step_);
      bwd = rk4_step(rhs, 0.0, bwd, -step_);
      forward_.push_back({fwd[0], fwd[1], fwd[2]});
      backward_.push_back({bwd[0], bwd[1], bwd[2]});
    }
    if (first_integral_drift() < 1e-12 * std::max(1.0, std::abs(target))) break;
    if (step_ < 1e-6) fail(ErrorKind::StepFailure, "unduloid profile did not converge");
  }
}

DelaunayProfile::State DelaunayProfile::at(double s) const {
  const bool fwd = s >= 0.0;
  const auto& table = fwd ? forward_ : backward_;
  const double a = std::abs(s);
  auto k = static_cast<std::size_t>(std::floor(a / step_));
  k = std::min(k, table.size() - 1);
  const State& node = table[k];
  const double dt = fwd ? s - static_cast<double>(k) * step_ : s + static_cast<double>(k) * step_;
  if (dt == 0.0) return node;
  const double H = H_;
  const auto rhs = [H](double, const Vec3& st) { return profile_rhs(H, st); };
  const Vec3 out = rk4_step(rhs, 0.0, Vec3(node.x, node.y, node.phi), dt);
  return {out[0], out[1], out[2]};
}

double DelaunayProfile::turning_rate(const State& st) const {
  return std::cos(st.phi) / st.y - 2.0 * H_;
}

double DelaunayProfile::first_integral(const State& st) const {
  return st.y * std::cos(st.phi) - H_ * st.y * st.y;
}

double DelaunayProfile::first_integral_drift() const {
  const double target = neck_ - H_ * neck_ * neck_;
  double worst = 0.0;
  for (const auto* table : {&forward_, &backward_}) {
    for (const State& st : *table) worst = std::max(worst, std::abs(first_integral(st) - target));
  }
  return worst;
}

std::shared_ptr<const DelaunayProfile> make_delaunay_profile(double H, double neck) {
  require_positive(H, "unduloid mean curvature");
  return std::make_shared<const DelaunayProfile>(H, neck, kPi / H);
}

SurfaceChart make_unduloid(double H, double neck) {
  auto profile = make_delaunay_profile(H, neck);
  auto map = [profile](double s, double t) {
    const auto st = profile->at(s);
    return Vec3(st.x, st.y * std::cos(t), st.y * std::sin(t));
  };
  auto jet = [profile](double s, double t) {
    const auto st = profile->at(s);
    const double ct = std::cos(t), sn = std::sin(t);
    const double cp = std::cos(st.phi), sp = std::sin(st.phi);
    const double dphi = profile->turning_rate(st);
    ChartJet j;
    j.r = Vec3(st.x, st.y * ct, st.y * sn);
    j.r_u = Vec3(cp, sp * ct, sp * sn);
    j.r_v = Vec3(0.0, -st.y * sn, st.y * ct);
    j.r_uu = dphi * Vec3(-sp, cp * ct, cp * sn);
    j.r_uv = Vec3(0.0, -sp * sn, sp * ct);
    j.r_vv = Vec3(0.0, -st.y * ct, -st.y * sn);
    return j;
  };
  const double L = profile->half_length();
  SurfaceChart chart(fmt::format("unduloid(H={},neck={})", H, neck),
                     ParamDomain{-L, L, -kPi, kPi, false, true}, map, jet, neck);
  chart.with_closed_form([profile](double s, double) {
    const auto st = profile->at(s);
    const double parallel = std::cos(st.phi) / st.y;
    const double meridian = -profile->turning_rate(st);
    return ordered(meridian, parallel);
  });
  return chart;
}

SurfaceChart make_graph(const Expression& height, ParamDomain domain) {
  auto map = [height](double x, double y) { return Vec3(x, y, height(x, y)); };
  return SurfaceChart(fmt::format("graph(z={})", height.text()), domain, map);
}

}  // namespace ballroll
