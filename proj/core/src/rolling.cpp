#include <ballroll/finite_difference.hpp>
#include <ballroll/io.hpp>
#include <ballroll/ode.hpp>
#include <ballroll/rolling.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Geometry>
#include <fmt/core.h>
#include <json.hpp>

namespace ballroll {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Mat3 frame_from(const Vec3& tangent, const Vec3& normal) {
  Mat3 D;
  D.col(0) = tangent;
  D.col(1) = normal.cross(tangent);
  D.col(2) = normal;
  return D;
}

// Modified Gram-Schmidt on (T, B); N = T x B keeps det = +1.
Mat3 orthonormalize(const Mat3& D) {
  Mat3 out;
  const Vec3 T = D.col(0).normalized();
  Vec3 B = D.col(1) - T * T.dot(D.col(1));
  B.normalize();
  out.col(0) = T;
  out.col(1) = B;
  out.col(2) = T.cross(B);
  return out;
}

int initial_step_count(double length, const AntiDevelopOptions& options) {
  const double wanted = std::ceil(options.steps_per_length * length);
  return std::max(options.min_steps, static_cast<int>(std::min(wanted, 1e8)));
}

// Nodes of one fixed-step integration, before triples are attached.
struct Trace {
  std::vector<Vec3> offsets;  // point - p
  std::vector<Mat3> frames;
  std::vector<Vec3> normals;
  std::vector<PathJet> chart_path;  // chart rollers only
};

// ---------------------------------------------------------------------------
// Ball and plane: ambient frame equation.

using FrameState = Eigen::Matrix<double, 12, 1>;

FrameState pack(const Vec3& offset, const Mat3& D) {
  FrameState y;
  y << offset, D.col(0), D.col(1), D.col(2);
  return y;
}

Trace integrate_ambient(const GeodesicCurvatureFn& kappa_g, double kappa_n, double length,
                        int steps, const Mat3& D0, const std::optional<double>& ball_r) {
  const double h = length / steps;
  const Vec3 normal_p = D0.col(2);
  const auto rhs = [&](double t, const FrameState& y) {
    const double kg = kappa_g(t);
    const Vec3 T = y.segment<3>(3), B = y.segment<3>(6), N = y.segment<3>(9);
    FrameState dy;
    dy << T, kg * B + kappa_n * N, -kg * T, -kappa_n * T;
    return dy;
  };

  Trace tr;
  tr.offsets.reserve(static_cast<std::size_t>(steps) + 1);
  tr.frames.reserve(static_cast<std::size_t>(steps) + 1);
  FrameState y = pack(Vec3::Zero(), D0);
  tr.offsets.push_back(Vec3::Zero());
  tr.frames.push_back(D0);
  for (int i = 0; i < steps; ++i) {
    y = rk4_step(rhs, i * h, y, h);
    Mat3 D;
    D.col(0) = y.segment<3>(3);
    D.col(1) = y.segment<3>(6);
    D.col(2) = y.segment<3>(9);
    D = orthonormalize(D);
    Vec3 offset = y.head<3>();
    if (ball_r) {
      const double r = *ball_r;
      const Vec3 center = r * normal_p;
      offset = center + std::abs(r) * (offset - center).normalized();
    } else {
      offset -= normal_p * normal_p.dot(offset);
    }
    y = pack(offset, D);
    tr.offsets.push_back(offset);
    tr.frames.push_back(D);
  }
  tr.normals.reserve(tr.offsets.size());
  for (const Vec3& offset : tr.offsets) {
    if (ball_r) {
      tr.normals.push_back((*ball_r * normal_p - offset) / *ball_r);
    } else {
      tr.normals.push_back(normal_p);
    }
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Chart rollers: prescribed geodesic curvature in chart coordinates.

using CoordState = Eigen::Vector4d;  // (u, v, u', v')

CoordState prescribed_curvature_rhs(const SurfaceChart& chart, double kg, const CoordState& y) {
  const ChartJet jet = chart.jet(y[0], y[1]);
  const NormalJet nj = normal_jet(chart, jet);
  const auto gamma = christoffel(jet);
  const Vec2 w(y[2], y[3]);
  const Vec3 velocity = w[0] * jet.r_u + w[1] * jet.r_v;
  const Vec2 side = tangent_coordinates(jet, nj.n.cross(velocity));
  return CoordState(y[2], y[3], -w.dot(gamma[0] * w) + kg * side[0],
                    -w.dot(gamma[1] * w) + kg * side[1]);
}

Trace integrate_chart(const ChartRoller& roller, const GeodesicCurvatureFn& kappa_g,
                      double length, int steps) {
  const SurfaceChart& chart = roller.chart;
  const PointGeometry pg = evaluate_point_geometry(chart, roller.u0, roller.v0);
  const Vec2 dir = pg.direction_uv(roller.angle);
  const double h = length / steps;
  const auto rhs = [&](double t, const CoordState& y) {
    return prescribed_curvature_rhs(chart, kappa_g(t), y);
  };

  Trace tr;
  CoordState y(roller.u0, roller.v0, dir[0], dir[1]);
  const auto record = [&](double t, const CoordState& st) {
    const CoordState dy = prescribed_curvature_rhs(chart, kappa_g(t), st);
    const PathJet pj{st[0], st[1], st[2], st[3], dy[2], dy[3]};
    const CurveSample cs = sample_path(chart, pj, t);
    tr.chart_path.push_back(pj);
    tr.offsets.push_back(cs.position);
    tr.frames.push_back(frame_from(cs.velocity.normalized(), cs.normal));
    tr.normals.push_back(cs.normal);
  };
  record(0.0, y);
  for (int i = 0; i < steps; ++i) {
    try {
      y = rk4_step(rhs, i * h, y, h);
      if (!chart.domain().contains(y[0], y[1])) chart.check_domain(y[0], y[1]);
      record((i + 1) * h, y);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::OutOfDomain) throw;
      fail(ErrorKind::DomainExit,
           fmt::format("anti-development leaves chart '{}' near t = {}", chart.name(), i * h));
    }
  }
  return tr;
}

Trace integrate_roller(const Roller& roller, const GeodesicCurvatureFn& kappa_g, double length,
                       int steps, const Mat3& D0) {
  return std::visit(
      overloaded{
          [&](const BallRoller& b) {
            return integrate_ambient(kappa_g, 1.0 / b.r, length, steps, D0, b.r);
          },
          [&](const PlaneRoller&) {
            return integrate_ambient(kappa_g, 0.0, length, steps, D0, std::nullopt);
          },
          [&](const ChartRoller& c) { return integrate_chart(c, kappa_g, length, steps); },
      },
      roller);
}

double max_node_change(const Trace& coarse, const Trace& fine) {
  double worst = 0.0;
  for (std::size_t k = 0; k < coarse.offsets.size(); ++k) {
    worst = std::max(worst, (coarse.offsets[k] - fine.offsets[2 * k]).norm());
    worst = std::max(worst, (coarse.frames[k] - fine.frames[2 * k]).norm());
  }
  return worst;
}

}  // namespace

AntiDevelopment anti_develop(const Roller& roller, const GeodesicCurvatureFn& kappa_g,
                             double length, const Vec3& p, const Vec3& v, const Vec3& normal_p,
                             const AntiDevelopOptions& options) {
  if (!(length > 0.0)) fail(ErrorKind::InvalidArgument, "anti-development length must be positive");
  if (const auto* b = std::get_if<BallRoller>(&roller); b && !(b->r != 0.0 && std::isfinite(b->r))) {
    fail(ErrorKind::InvalidArgument, "ball parameter r must be finite and nonzero");
  }
  const Mat3 D0 = frame_from(v.normalized(), normal_p.normalized());

  int steps = initial_step_count(length, options);
  Trace coarse = integrate_roller(roller, kappa_g, length, steps, D0);
  Trace fine;
  double change = 0.0;
  for (int halving = 0;; ++halving) {
    fine = integrate_roller(roller, kappa_g, length, 2 * steps, D0);
    change = max_node_change(coarse, fine);
    if (change < options.tolerance) break;
    if (halving >= options.max_halvings) {
      fail(ErrorKind::StepFailure,
           fmt::format("anti-development did not converge: step-halving change {:.3e}", change));
    }
    coarse = std::move(fine);
    steps *= 2;
  }
  const int n = 2 * steps;
  const double h = length / n;

  // Rigid placement for chart rollers: chart start frame -> D0 at p.
  Mat3 R = Mat3::Identity();
  Vec3 shift = p;
  if (std::holds_alternative<ChartRoller>(roller)) {
    R = D0 * fine.frames.front().transpose();
    shift = p - R * fine.offsets.front();
  }

  AntiDevelopment ad;
  ad.roller = roller;
  ad.origin = p;
  ad.step = h;
  ad.richardson_change = change;
  ad.ts.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = i * h;
    const auto k = static_cast<std::size_t>(i);
    ad.ts.push_back(t);
    ad.points.push_back(R * fine.offsets[k] + shift);
    ad.frames.push_back(R * fine.frames[k]);
    ad.surface_normals.push_back(R * fine.normals[k]);

    DarbouxTriple d;
    d.t = t;
    d.kappa_g = kappa_g(t);
    std::visit(overloaded{
                   [&](const BallRoller& b) { d.kappa_n = 1.0 / b.r; },
                   [&](const PlaneRoller&) {},
                   [&](const ChartRoller& c) {
                     const DarbouxTriple own =
                         darboux_data(sample_path(c.chart, fine.chart_path[k], t));
                     d.kappa_n = own.kappa_n;
                     d.tau_g = own.tau_g;
                   },
               },
               roller);
    ad.triples.push_back(d);
  }
  return ad;
}

AntiDevelopment anti_develop(const Roller& roller, const SurfaceCurve& curve,
                             const AntiDevelopOptions& options) {
  if (!curve.unit_speed()) {
    fail(ErrorKind::InvalidArgument, "anti-development needs a unit-speed contact curve");
  }
  const CurveSample s0 = curve.sample(0.0);
  const GeodesicCurvatureFn kg = [&curve](double t) {
    return darboux_data(curve, std::clamp(t, 0.0, curve.length())).kappa_g;
  };
  return anti_develop(roller, kg, curve.length(), s0.position, s0.velocity, s0.normal, options);
}

std::vector<DarbouxTriple> measured_anti_development_curvature(const AntiDevelopment& ad,
                                                               double min_spacing) {
  const std::size_t n = ad.size();
  if (n < 6) fail(ErrorKind::InvalidArgument, "need at least six anti-development samples");
  std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(min_spacing / ad.step));
  while (stride > 1 && (n - 1) / stride + 1 < 6) --stride;

  std::vector<Vec3> pts, normals;
  std::vector<double> ts;
  for (std::size_t i = 0; i < n; i += stride) {
    pts.push_back(ad.points[i] - ad.origin);
    normals.push_back(ad.surface_normals[i]);
    ts.push_back(ad.ts[i]);
  }
  const double h = ad.step * static_cast<double>(stride);
  const std::span<const Vec3> ps(pts), ns(normals);

  std::vector<DarbouxTriple> out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec3 d1 = fd::first_derivative(ps, i, h);
    const Vec3 d2 = fd::second_derivative(ps, i, h);
    const Vec3 dn = fd::first_derivative(ns, i, h);
    const double speed = d1.norm();
    const Vec3 side = normals[i].cross(d1);
    DarbouxTriple d;
    d.t = ts[i];
    d.kappa_g = d2.dot(side) / (speed * speed * speed);
    d.kappa_n = d2.dot(normals[i]) / (speed * speed);
    d.tau_g = -dn.dot(side) / (speed * speed);
    out.push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Existence

namespace {

// min over s in [0,1] of max(|a(s)|, |b(s)|) for linear a, b; returns (value, s).
std::pair<double, double> min_of_max_abs(double a0, double a1, double b0, double b1) {
  const auto eval = [&](double s) {
    return std::max(std::abs(a0 + (a1 - a0) * s), std::abs(b0 + (b1 - b0) * s));
  };
  std::vector<double> candidates{0.0, 1.0};
  const auto root = [&](double c0, double c1) {
    if (c1 != c0) {
      const double s = c0 / (c0 - c1);
      if (s > 0.0 && s < 1.0) candidates.push_back(s);
    }
  };
  root(a0, a1);
  root(b0, b1);
  root(a0 - b0, a1 - b1);
  root(a0 + b0, a1 + b1);
  double best = eval(0.0), best_s = 0.0;
  for (double s : candidates) {
    const double val = eval(s);
    if (val < best) {
      best = val;
      best_s = s;
    }
  }
  return {best, best_s};
}

}  // namespace

RollingExistence rolling_exists(const std::vector<DarbouxTriple>& curve,
                                const std::vector<DarbouxTriple>& anti) {
  if (curve.size() != anti.size() || curve.empty()) {
    fail(ErrorKind::InvalidArgument, "existence test needs two samplings on the same grid");
  }
  double scale = 1.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    scale = std::max({scale, std::abs(curve[i].kappa_n), std::abs(curve[i].tau_g),
                      std::abs(anti[i].kappa_n), std::abs(anti[i].tau_g)});
  }
  RollingExistence out;
  out.tolerance = 1e-9 * scale;
  out.min_gap = std::numeric_limits<double>::infinity();

  const auto dk = [&](std::size_t i) { return curve[i].kappa_n - anti[i].kappa_n; };
  const auto dt = [&](std::size_t i) { return curve[i].tau_g - anti[i].tau_g; };
  const auto note = [&](double gap, double t) {
    out.min_gap = std::min(out.min_gap, gap);
    if (gap < out.tolerance && !out.violation_t) {
      out.exists = false;
      out.violation_t = t;
    }
  };

  note(std::max(std::abs(dk(0)), std::abs(dt(0))), curve[0].t);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const auto [gap, s] = min_of_max_abs(dk(i - 1), dk(i), dt(i - 1), dt(i));
    note(gap, curve[i - 1].t + s * (curve[i].t - curve[i - 1].t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Motion

Mat3 skew(const Vec3& w) {
  Mat3 S;
  S << 0.0, -w.z(), w.y(),  //
      w.z(), 0.0, -w.x(),   //
      -w.y(), w.x(), 0.0;
  return S;
}

Vec3 axial_vector(const Mat3& Q, double tol) {
  const double asym = (Q + Q.transpose()).norm();
  if (asym > tol * std::max(1.0, Q.norm())) {
    fail(ErrorKind::InvalidArgument, fmt::format("matrix is not skew-symmetric (|Q + Q^T| = {:.3e})", asym));
  }
  return Vec3(Q(2, 1), Q(0, 2), Q(1, 0));
}

Vec3 angular_velocity_components(const DarbouxTriple& curve, const DarbouxTriple& anti) {
  return Vec3(curve.tau_g - anti.tau_g, anti.kappa_n - curve.kappa_n, 0.0);
}

RigidMotionFamily build_motion(const SurfaceCurve& curve, const AntiDevelopment& ad) {
  const std::size_t n = ad.size();
  if (n == 0) fail(ErrorKind::InvalidArgument, "empty anti-development");

  RigidMotionFamily fam;
  fam.step = ad.step;
  fam.ts = ad.ts;
  fam.roller_triples = ad.triples;
  std::vector<CurveSample> samples;
  samples.reserve(n);
  for (double t : ad.ts) {
    samples.push_back(curve.sample(std::min(t, curve.length())));
    fam.curve_triples.push_back(darboux_data(samples.back()));
    fam.curve_triples.back().t = t;
  }

  const RollingExistence ex = rolling_exists(fam.curve_triples, ad.triples);
  if (!ex.exists) {
    const double t = *ex.violation_t;
    throw NotRollingError(
        t, fmt::format("NotRolling: kappa_n and tau_g of the contact curve coincide with those "
                       "of the anti-development at t = {} (gap {:.3e} < {:.3e})",
                       t, ex.min_gap, ex.tolerance));
  }

  for (std::size_t i = 0; i < n; ++i) {
    const CurveSample& cs = samples[i];
    const Mat3 D = darboux_frame(cs);
    const Mat3 A = D * ad.frames[i].transpose();
    fam.frames.push_back(D);
    fam.rotations.push_back(A);
    fam.translations.push_back(cs.position - A * ad.points[i]);
    fam.contacts.push_back(cs.position);
    fam.normals.push_back(cs.normal);

    const Mat3 Q = D * (darboux_generator(ad.triples[i]) - darboux_generator(fam.curve_triples[i])) *
                   D.transpose();
    fam.angular_velocities.push_back(axial_vector(Q));
  }
  return fam;
}

Rolling roll(const SurfaceCurve& curve, const Roller& roller, const AntiDevelopOptions& options) {
  AntiDevelopment ad = anti_develop(roller, curve, options);
  RigidMotionFamily fam = build_motion(curve, ad);
  return Rolling{std::move(ad), std::move(fam)};
}

MotionClass classify_instantaneous(const Mat3& Q, const Vec3& v, const Vec3& contact, double tol) {
  if ((Q + Q.transpose()).norm() > 1e-9 * std::max(1.0, Q.norm())) {
    fail(ErrorKind::InvalidArgument, "instantaneous motion needs a skew-symmetric Q");
  }
  if (Q.norm() < tol) {
    if (v.norm() < tol) return Standstill{};
    return Translation{v};
  }
  const Vec3 w = axial_vector(Q, 1e-9);
  const double w2 = w.squaredNorm();
  // Translation along the axis (screw part) must vanish.
  if (std::abs(w.dot(v)) / std::sqrt(w2) > std::max(tol, 1e-9 * std::max(1.0, v.norm()))) {
    fail(ErrorKind::NoCenter,
         fmt::format("Qx + v = 0 has no solution (<omega, v> = {:.3e}); screw motion", w.dot(v)));
  }
  const Vec3 base = w.cross(v) / w2;
  const Vec3 center = base + w * (w.dot(contact - base) / w2);
  return Rotation{center, w};
}

CenterTrajectory center_trajectory(const RigidMotionFamily& fam, double r) {
  CenterTrajectory out;
  if (fam.size() == 0) return out;
  const Vec3 c0 = fam.contacts.front() + r * fam.normals.front();
  out.ts = fam.ts;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    out.via_motion.push_back(fam.apply(i, c0));
    out.via_normal.push_back(fam.contacts[i] + r * fam.normals[i]);
    out.max_discrepancy =
        std::max(out.max_discrepancy, (out.via_motion.back() - out.via_normal.back()).norm());
  }
  return out;
}

double initial_center_speed(const RigidMotionFamily& fam, double r) {
  if (fam.size() < 5) fail(ErrorKind::InvalidArgument, "need five samples for the initial speed");
  const Vec3 c0 = fam.contacts.front() + r * fam.normals.front();
  std::vector<Vec3> offsets;
  for (std::size_t i = 0; i < 5; ++i) offsets.push_back(fam.apply(i, c0) - c0);
  return fd::first_derivative(std::span<const Vec3>(offsets), 0, fam.step).norm();
}

MotionResiduals motion_residuals(const RigidMotionFamily& fam, const AntiDevelopment& ad) {
  MotionResiduals res;
  const std::size_t n = fam.size();
  if (n < 6) fail(ErrorKind::InvalidArgument, "need at least six samples for residuals");
  const std::span<const Mat3> As(fam.rotations);
  const std::span<const Vec3> bs(fam.translations);
  res.initial = (fam.rotations[0] - Mat3::Identity()).norm() + fam.translations[0].norm();

  for (std::size_t i = 0; i < n; ++i) {
    const Mat3& A = fam.rotations[i];
    res.orthogonality = std::max(res.orthogonality, (A.transpose() * A - Mat3::Identity()).norm());
    res.determinant = std::max(res.determinant, std::abs(A.determinant() - 1.0));

    const Mat3 dA = fd::first_derivative(As, i, fam.step);
    const Vec3 db = fd::first_derivative(bs, i, fam.step);
    const Mat3 Q = dA * A.transpose();
    const Mat3 Qs = 0.5 * (Q - Q.transpose());
    const Vec3 w_fd(Qs(2, 1), Qs(0, 2), Qs(1, 0));

    const Vec3 comps = angular_velocity_components(fam.curve_triples[i], fam.roller_triples[i]);
    const Vec3 w_formula = fam.frames[i] * comps;
    const Vec3& N = fam.normals[i];
    const Vec3& g = fam.contacts[i];

    res.no_spin = std::max({res.no_spin, std::abs(fam.angular_velocities[i].dot(N)),
                            std::abs(w_fd.dot(N))});
    res.no_skid = std::max(res.no_skid, (Q * g + db - Q * fam.translations[i]).norm());
    res.omega_agreement = std::max(res.omega_agreement, (w_fd - w_formula).norm());
    res.formula_agreement =
        std::max(res.formula_agreement, (fam.angular_velocities[i] - w_formula).norm());
    res.tangency = std::max(res.tangency, (A * ad.surface_normals[i] - N).norm());
  }
  return res;
}

namespace {

const char* const kMotionColumns[] = {
    "t",       "A00",     "A01",     "A02",       "A10",       "A11",       "A12",
    "A20",     "A21",     "A22",     "b_x",       "b_y",       "b_z",       "omega_x",
    "omega_y", "omega_z", "contact_x", "contact_y", "contact_z"};

std::vector<double> motion_row(const RigidMotionFamily& fam, std::size_t i) {
  std::vector<double> row{fam.ts[i]};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) row.push_back(fam.rotations[i](a, b));
  }
  for (int k = 0; k < 3; ++k) row.push_back(fam.translations[i][k]);
  for (int k = 0; k < 3; ++k) row.push_back(fam.angular_velocities[i][k]);
  for (int k = 0; k < 3; ++k) row.push_back(fam.contacts[i][k]);
  return row;
}

}  // namespace

void write_motion_csv(std::ostream& out, const RigidMotionFamily& fam) {
  for (std::size_t c = 0; c < std::size(kMotionColumns); ++c) {
    out << (c ? "," : "") << kMotionColumns[c];
  }
  out << '\n';
  for (std::size_t i = 0; i < fam.size(); ++i) out << join_numbers(motion_row(fam, i)) << '\n';
}

void write_motion_json(std::ostream& out, const RigidMotionFamily& fam) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const std::vector<double> row = motion_row(fam, i);
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) obj[kMotionColumns[c]] = row[c];
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << '\n';
}

}  // namespace ballroll
