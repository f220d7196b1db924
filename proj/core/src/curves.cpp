#include <ballroll/curves.hpp>
#include <ballroll/io.hpp>
#include <ballroll/ode.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <Eigen/Geometry>
#include <fmt/core.h>

namespace ballroll {

// ---------------------------------------------------------------------------
// SurfaceCurve

SurfaceCurve::SurfaceCurve(SurfaceChart host, PathFn path, double length, bool unit_speed)
    : host_(std::move(host)), path_(std::move(path)), length_(length), unit_speed_(unit_speed) {
  if (!path_) fail(ErrorKind::InvalidArgument, "curve needs a path");
  if (!(length_ > 0.0)) fail(ErrorKind::InvalidArgument, "curve length must be positive");
}

SurfaceCurve::SurfaceCurve(SurfaceChart host, PointPathFn path, double length, bool unit_speed)
    : host_(std::move(host)), length_(length), unit_speed_(unit_speed), analytic_(false) {
  if (!path) fail(ErrorKind::InvalidArgument, "curve needs a path");
  if (!(length_ > 0.0)) fail(ErrorKind::InvalidArgument, "curve length must be positive");
  const double h = 1e-5 * length;
  const double end = length;
  path_ = [path = std::move(path), h, end](double t) {
    // Central stencil, shifted to a one-sided one near the ends.
    double c = t;
    if (t - h < 0.0) c = h;
    if (t + h > end) c = end - h;
    const Vec2 p0 = path(t);
    const Vec2 pm = path(c - h);
    const Vec2 pc = path(c);
    const Vec2 pp = path(c + h);
    const Vec2 d2 = (pp - 2.0 * pc + pm) / (h * h);
    // Expand the first derivative about c when the stencil was shifted.
    const Vec2 d1 = (pp - pm) / (2.0 * h) + (t - c) * d2;
    return PathJet{p0[0], p0[1], d1[0], d1[1], d2[0], d2[1]};
  };
}

PathJet SurfaceCurve::path_jet(double t) const { return path_(t); }

CurveSample SurfaceCurve::sample(double t) const { return sample_path(host_, path_(t), t); }

CurveSample sample_path(const SurfaceChart& chart, const PathJet& path, double t) {
  CurveSample s;
  s.t = t;
  s.path = path;
  const ChartJet jet = chart.jet(s.path.u, s.path.v);
  const NormalJet nj = normal_jet(chart, jet);
  const double du = s.path.du, dv = s.path.dv;
  s.position = jet.r;
  s.velocity = du * jet.r_u + dv * jet.r_v;
  s.acceleration = du * du * jet.r_uu + 2.0 * du * dv * jet.r_uv + dv * dv * jet.r_vv +
                   s.path.ddu * jet.r_u + s.path.ddv * jet.r_v;
  s.normal = nj.n;
  s.normal_rate = du * nj.n_u + dv * nj.n_v;
  return s;
}

Vec3 SurfaceCurve::point(double t) const {
  const PathJet p = path_(t);
  return host_.point(p.u, p.v);
}

SurfaceCurve SurfaceCurve::subarc(double t0, double t1) const {
  if (!(t0 >= 0.0 && t1 <= length_ * (1.0 + 1e-12) && t1 > t0)) {
    fail(ErrorKind::InvalidArgument, fmt::format("subarc [{}, {}] outside [0, {}]", t0, t1, length_));
  }
  SurfaceCurve out = *this;
  out.path_ = [base = path_, t0](double t) { return base(t + t0); };
  out.length_ = t1 - t0;
  return out;
}

// ---------------------------------------------------------------------------
// Darboux quantities

DarbouxTriple darboux_data(const CurveSample& s) {
  const Vec3 side = s.normal.cross(s.velocity);
  DarbouxTriple d;
  d.t = s.t;
  d.kappa_g = s.acceleration.dot(side);
  d.kappa_n = s.acceleration.dot(s.normal);
  d.tau_g = -s.normal_rate.dot(side);
  return d;
}

DarbouxTriple darboux_data(const SurfaceCurve& curve, double t) {
  return darboux_data(curve.sample(t));
}

Mat3 darboux_frame(const CurveSample& s) {
  const Vec3 T = s.velocity.normalized();
  Mat3 D;
  D.col(0) = T;
  D.col(1) = s.normal.cross(T);
  D.col(2) = s.normal;
  return D;
}

Mat3 darboux_frame(const SurfaceCurve& curve, double t) { return darboux_frame(curve.sample(t)); }

Mat3 darboux_generator(double kappa_g, double kappa_n, double tau_g) {
  Mat3 L;
  L << 0.0, kappa_g, kappa_n,  //
      -kappa_g, 0.0, tau_g,    //
      -kappa_n, -tau_g, 0.0;
  return L;
}

Mat3 darboux_generator(const DarbouxTriple& d) {
  return darboux_generator(d.kappa_g, d.kappa_n, d.tau_g);
}

EulerCurvatures euler_curvatures(double k1, double k2, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {k1 * c * c + k2 * s * s, (k2 - k1) * s * c};
}

EulerCurvatures euler_curvatures(const PointGeometry& pg, double theta) {
  return euler_curvatures(pg.k1, pg.k2, theta);
}

// ---------------------------------------------------------------------------
// Arclength

namespace {

double speed_at(const SurfaceCurve& curve, double t) { return curve.sample(t).velocity.norm(); }

double integrate_speed(const SurfaceCurve& curve, double a, double b) {
  if (a == b) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  // The G15 result is far more accurate than the |G7 - K15| estimate, so a
  // modest tolerance still gives near machine precision on smooth speeds.
  return gauss_kronrod<double, 15>::integrate([&](double t) { return speed_at(curve, t); }, a, b,
                                              8, 1e-11);
}

// Arclength table plus Newton inversion s -> t.
struct ArclengthMap {
  SurfaceCurve curve;
  std::vector<double> t_nodes;
  std::vector<double> s_nodes;

  double parameter_at(double s) const {
    const double total = s_nodes.back();
    s = std::clamp(s, 0.0, total);
    auto it = std::upper_bound(s_nodes.begin(), s_nodes.end(), s);
    std::size_t k = it == s_nodes.begin() ? 0 : static_cast<std::size_t>(it - s_nodes.begin()) - 1;
    k = std::min(k, s_nodes.size() - 2);
    const double ta = t_nodes[k], tb = t_nodes[k + 1];
    const double sa = s_nodes[k], sb = s_nodes[k + 1];
    if (s <= sa) return ta;
    if (s >= sb) return tb;
    const double guess = ta + (tb - ta) * (s - sa) / (sb - sa);
    const auto residual = [&](double t) {
      return std::make_pair(sa + integrate_speed(curve, ta, t) - s, speed_at(curve, t));
    };
    std::uintmax_t iterations = 60;
    return boost::math::tools::newton_raphson_iterate(residual, guess, ta, tb, 50, iterations);
  }
};

}  // namespace

double arclength(const SurfaceCurve& curve, double a, double b) {
  return integrate_speed(curve, a, b);
}

SurfaceCurve unit_speed_reparametrize(const SurfaceCurve& curve) {
  if (curve.unit_speed()) return curve;

  const double T = curve.length();
  const double floor_speed = 1e-10 * curve.host().length_scale();
  constexpr int kProbe = 1024;
  for (int i = 0; i <= kProbe; ++i) {
    const double t = T * i / kProbe;
    const double sp = speed_at(curve, t);
    if (!(sp >= floor_speed)) {
      fail(ErrorKind::SingularCurve, fmt::format("curve speed {:.3e} at t = {}", sp, t));
    }
  }

  auto map = std::make_shared<ArclengthMap>(ArclengthMap{curve, {}, {}});
  constexpr int kIntervals = 64;
  map->t_nodes.push_back(0.0);
  map->s_nodes.push_back(0.0);
  for (int i = 1; i <= kIntervals; ++i) {
    const double ta = T * (i - 1) / kIntervals;
    const double tb = T * i / kIntervals;
    map->t_nodes.push_back(tb);
    map->s_nodes.push_back(map->s_nodes.back() + integrate_speed(curve, ta, tb));
  }
  const double total = map->s_nodes.back();

  auto path = [map](double s) {
    const double t = map->parameter_at(s);
    const CurveSample cs = map->curve.sample(t);
    const double sigma = cs.velocity.norm();
    const double dsigma = cs.velocity.dot(cs.acceleration) / sigma;
    const PathJet& p = cs.path;
    PathJet q;
    q.u = p.u;
    q.v = p.v;
    q.du = p.du / sigma;
    q.dv = p.dv / sigma;
    q.ddu = p.ddu / (sigma * sigma) - p.du * dsigma / (sigma * sigma * sigma);
    q.ddv = p.ddv / (sigma * sigma) - p.dv * dsigma / (sigma * sigma * sigma);
    return q;
  };
  return SurfaceCurve(curve.host(), SurfaceCurve::PathFn(path), total, true);
}

SurfaceCurve curve_from_parameter_path(const SurfaceChart& chart, SurfaceCurve::PathFn path,
                                       double t0, double t1) {
  if (!(t1 > t0)) fail(ErrorKind::InvalidArgument, "parameter path needs t1 > t0");
  auto shifted = [path = std::move(path), t0](double t) { return path(t + t0); };
  return unit_speed_reparametrize(SurfaceCurve(chart, SurfaceCurve::PathFn(shifted), t1 - t0, false));
}

SurfaceCurve curve_from_parameter_path(const SurfaceChart& chart,
                                       SurfaceCurve::PointPathFn path, double t0, double t1) {
  if (!(t1 > t0)) fail(ErrorKind::InvalidArgument, "parameter path needs t1 > t0");
  auto shifted = [path = std::move(path), t0](double t) { return path(t + t0); };
  return unit_speed_reparametrize(
      SurfaceCurve(chart, SurfaceCurve::PointPathFn(shifted), t1 - t0, false));
}

// ---------------------------------------------------------------------------
// Geodesics

namespace {

using GeoState = Eigen::Vector4d;  // (u, v, u', v')

GeoState geodesic_rhs(const SurfaceChart& chart, const GeoState& y) {
  const ChartJet jet = chart.jet(y[0], y[1]);
  const auto gamma = christoffel(jet);
  const Vec2 w(y[2], y[3]);
  return GeoState(y[2], y[3], -w.dot(gamma[0] * w), -w.dot(gamma[1] * w));
}

struct GeodesicTable {
  SurfaceChart chart;
  double step = 0.0;
  std::vector<GeoState> nodes;

  GeoState state_at(double t) const {
    auto k = static_cast<std::size_t>(std::max(0.0, std::floor(t / step)));
    k = std::min(k, nodes.size() - 1);
    const double dt = t - static_cast<double>(k) * step;
    if (dt == 0.0) return nodes[k];
    const auto rhs = [this](double, const GeoState& y) { return geodesic_rhs(chart, y); };
    return rk4_step(rhs, 0.0, nodes[k], dt);
  }
};

std::vector<GeoState> integrate_geodesic(const SurfaceChart& chart, const GeoState& start,
                                         double length, int steps) {
  const double h = length / steps;
  const auto rhs = [&chart](double, const GeoState& y) { return geodesic_rhs(chart, y); };
  std::vector<GeoState> nodes;
  nodes.reserve(static_cast<std::size_t>(steps) + 1);
  nodes.push_back(start);
  for (int i = 0; i < steps; ++i) {
    try {
      nodes.push_back(rk4_step(rhs, 0.0, nodes.back(), h));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::OutOfDomain) throw;
      fail(ErrorKind::DomainExit, fmt::format("geodesic on '{}' leaves the chart near t = {}",
                                              chart.name(), i * h));
    }
    const GeoState& y = nodes.back();
    if (!chart.domain().contains(y[0], y[1])) {
      fail(ErrorKind::DomainExit, fmt::format("geodesic on '{}' leaves the chart at t = {}",
                                              chart.name(), (i + 1) * h));
    }
  }
  return nodes;
}

}  // namespace

SurfaceCurve geodesic_from(const SurfaceChart& chart, double u0, double v0, double theta,
                           double length, const GeodesicOptions& options) {
  if (!(length > 0.0)) fail(ErrorKind::InvalidArgument, "geodesic length must be positive");
  const PointGeometry pg = evaluate_point_geometry(chart, u0, v0);
  const Vec2 dir = pg.direction_uv(theta);
  const GeoState start(u0, v0, dir[0], dir[1]);

  int steps = std::max(options.steps, 4);
  std::vector<GeoState> coarse = integrate_geodesic(chart, start, length, steps);
  std::vector<GeoState> fine;
  for (int halving = 0;; ++halving) {
    fine = integrate_geodesic(chart, start, length, 2 * steps);
    // Compared in ambient terms at every shared node: chart velocities blow
    // up near coordinate singularities such as the poles of a sphere.
    double drift = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      const GeoState& a = coarse[i];
      const GeoState& b = fine[2 * i];
      const ChartJet ja = chart.jet(a[0], a[1]), jb = chart.jet(b[0], b[1]);
      const Vec3 va = a[2] * ja.r_u + a[3] * ja.r_v, vb = b[2] * jb.r_u + b[3] * jb.r_v;
      drift = std::max({drift, (ja.r - jb.r).norm(), (va - vb).norm()});
    }
    if (drift < options.tolerance) break;
    if (halving >= options.max_halvings) {
      fail(ErrorKind::StepFailure,
           fmt::format("geodesic step halving did not converge (drift {:.3e})", drift));
    }
    coarse = std::move(fine);
    steps *= 2;
  }

  auto table = std::make_shared<GeodesicTable>(
      GeodesicTable{chart, length / (2 * steps), std::move(fine)});
  auto path = [table](double t) {
    const GeoState y = table->state_at(t);
    const GeoState dy = geodesic_rhs(table->chart, y);
    return PathJet{y[0], y[1], y[2], y[3], dy[2], dy[3]};
  };
  return SurfaceCurve(chart, SurfaceCurve::PathFn(path), length, true);
}

void write_curve_csv(std::ostream& out, const SurfaceCurve& curve, int samples) {
  if (samples < 2) fail(ErrorKind::InvalidArgument, "need at least two curve samples");
  out << "t,u,v,x,y,z,kappa_g,kappa_n,tau_g\n";
  for (int i = 0; i < samples; ++i) {
    const double t = curve.length() * i / (samples - 1);
    const CurveSample s = curve.sample(t);
    const DarbouxTriple d = darboux_data(s);
    out << join_numbers({t, s.path.u, s.path.v, s.position.x(), s.position.y(), s.position.z(),
                         d.kappa_g, d.kappa_n, d.tau_g})
        << '\n';
  }
}

}  // namespace ballroll
