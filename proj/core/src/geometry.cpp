#include <ballroll/geometry.hpp>

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Geometry>
#include <fmt/core.h>

namespace ballroll {

Vec3 PointGeometry::direction(double theta) const {
  return std::cos(theta) * e1 + std::sin(theta) * e2;
}

Vec2 PointGeometry::direction_uv(double theta) const {
  return std::cos(theta) * e1_uv + std::sin(theta) * e2_uv;
}

double umbilic_tolerance(double k1, double k2) {
  return 1e-7 * std::max({std::abs(k1), std::abs(k2), 1.0});
}

NormalJet normal_jet(const SurfaceChart& chart, const ChartJet& jet) {
  const Vec3 n = jet.r_u.cross(jet.r_v);
  const double len = n.norm();
  if (!(len >= chart.regularity_threshold())) {
    fail(ErrorKind::DegenerateChart,
         fmt::format("|r_u x r_v| = {:.3e} below {:.3e} on chart '{}'", len,
                     chart.regularity_threshold(), chart.name()));
  }
  const Vec3 n_u = jet.r_uu.cross(jet.r_v) + jet.r_u.cross(jet.r_uv);
  const Vec3 n_v = jet.r_uv.cross(jet.r_v) + jet.r_u.cross(jet.r_vv);

  NormalJet out;
  out.n = n / len;
  out.n_u = (n_u - out.n * out.n.dot(n_u)) / len;
  out.n_v = (n_v - out.n * out.n.dot(n_v)) / len;
  if (chart.orientation_flip()) {
    out.n = -out.n;
    out.n_u = -out.n_u;
    out.n_v = -out.n_v;
  }
  return out;
}

Mat2 first_form(const ChartJet& jet) {
  Mat2 I;
  I << jet.r_u.dot(jet.r_u), jet.r_u.dot(jet.r_v), jet.r_u.dot(jet.r_v), jet.r_v.dot(jet.r_v);
  return I;
}

Mat2 second_form(const ChartJet& jet, const Vec3& normal) {
  Mat2 II;
  II << jet.r_uu.dot(normal), jet.r_uv.dot(normal), jet.r_uv.dot(normal), jet.r_vv.dot(normal);
  return II;
}

std::array<Mat2, 2> christoffel(const ChartJet& jet) {
  const Mat2 inv = first_form(jet).inverse();
  // <r_ij, r_l> for l = u, v.
  Mat2 with_u, with_v;
  with_u << jet.r_uu.dot(jet.r_u), jet.r_uv.dot(jet.r_u), jet.r_uv.dot(jet.r_u),
      jet.r_vv.dot(jet.r_u);
  with_v << jet.r_uu.dot(jet.r_v), jet.r_uv.dot(jet.r_v), jet.r_uv.dot(jet.r_v),
      jet.r_vv.dot(jet.r_v);
  std::array<Mat2, 2> gamma;
  gamma[0] = inv(0, 0) * with_u + inv(0, 1) * with_v;
  gamma[1] = inv(1, 0) * with_u + inv(1, 1) * with_v;
  return gamma;
}

Vec2 tangent_coordinates(const ChartJet& jet, const Vec3& w) {
  const Vec2 rhs(jet.r_u.dot(w), jet.r_v.dot(w));
  return first_form(jet).ldlt().solve(rhs);
}

PointGeometry evaluate_point_geometry(const SurfaceChart& chart, double u, double v) {
  const ChartJet jet = chart.jet(u, v);
  const NormalJet nj = normal_jet(chart, jet);

  PointGeometry pg;
  pg.u = u;
  pg.v = v;
  pg.position = jet.r;
  pg.normal = nj.n;

  const Mat2 I = first_form(jet);
  const Mat2 II = second_form(jet, nj.n);
  pg.E = I(0, 0);
  pg.F = I(0, 1);
  pg.G = I(1, 1);
  pg.e = II(0, 0);
  pg.f = II(0, 1);
  pg.g = II(1, 1);

  // Symmetric form of the shape operator in an I-orthonormal basis.
  const Eigen::LLT<Mat2> llt(I);
  const Mat2 L = llt.matrixL();
  const Mat2 Linv = L.inverse();
  Mat2 B = Linv * II * Linv.transpose();
  B(0, 1) = B(1, 0) = 0.5 * (B(0, 1) + B(1, 0));

  const double mid = 0.5 * (B(0, 0) + B(1, 1));
  const double half_diff = 0.5 * (B(0, 0) - B(1, 1));
  const double radius = std::hypot(half_diff, B(0, 1));
  pg.k1 = mid + radius;
  pg.k2 = mid - radius;
  pg.is_umbilic = (pg.k1 - pg.k2) < umbilic_tolerance(pg.k1, pg.k2);

  if (pg.is_umbilic) {
    // Directions are undefined; use the r_u axis.
    pg.e1 = jet.r_u.normalized();
  } else {
    const double phi = 0.5 * std::atan2(2.0 * B(0, 1), B(0, 0) - B(1, 1));
    const Vec2 y(std::cos(phi), std::sin(phi));
    const Vec2 a = Linv.transpose() * y;
    pg.e1 = (a[0] * jet.r_u + a[1] * jet.r_v).normalized();
  }
  pg.e2 = pg.normal.cross(pg.e1);
  pg.e1_uv = tangent_coordinates(jet, pg.e1);
  pg.e2_uv = tangent_coordinates(jet, pg.e2);
  return pg;
}

double ParamRegion::u_at(int i) const {
  return nu <= 1 ? u_min : u_min + (u_max - u_min) * i / (nu - 1);
}

double ParamRegion::v_at(int j) const {
  return nv <= 1 ? v_min : v_min + (v_max - v_min) * j / (nv - 1);
}

namespace {

void align_to(PointGeometry& pg, const Vec3& reference) {
  if (pg.e1.dot(reference) < 0.0) {
    pg.e1 = -pg.e1;
    pg.e2 = -pg.e2;
    pg.e1_uv = -pg.e1_uv;
    pg.e2_uv = -pg.e2_uv;
  }
}

}  // namespace

PrincipalFrameField principal_frame_field(const SurfaceChart& chart, const ParamRegion& region) {
  if (region.nu < 1 || region.nv < 1) fail(ErrorKind::InvalidArgument, "empty frame grid");
  PrincipalFrameField field;
  field.region = region;
  field.samples.reserve(static_cast<std::size_t>(region.nu * region.nv));
  for (int j = 0; j < region.nv; ++j) {
    for (int i = 0; i < region.nu; ++i) {
      PointGeometry pg = evaluate_point_geometry(chart, region.u_at(i), region.v_at(j));
      if (pg.is_umbilic) {
        fail(ErrorKind::UmbilicInRegion,
             fmt::format("umbilic sample at ({}, {}) with k1 - k2 = {:.3e}", pg.u, pg.v,
                         pg.k1 - pg.k2));
      }
      if (j == 0 && i > 0) {
        align_to(pg, field.samples.back().e1);
      } else if (j > 0) {
        align_to(pg, field.at(i, j - 1).e1);
      }
      field.samples.push_back(pg);
    }
  }
  return field;
}

}  // namespace ballroll
