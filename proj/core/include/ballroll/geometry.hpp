#pragma once

#include <ballroll/chart.hpp>
#include <ballroll/types.hpp>

#include <array>
#include <vector>

namespace ballroll {

/// Pointwise curvature data of a chart at (u, v). Curvatures are signed with
/// respect to `normal`; k1 >= k2 always.
struct PointGeometry {
  double u = 0.0;
  double v = 0.0;
  Vec3 position = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  // First fundamental form.
  double E = 1.0, F = 0.0, G = 1.0;
  // Second fundamental form with respect to `normal`.
  double e = 0.0, f = 0.0, g = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  /// Unit principal directions; (e1, e2, normal) is right-handed.
  Vec3 e1 = Vec3::UnitX();
  Vec3 e2 = Vec3::UnitY();
  /// The same directions in chart coordinates: e_i = e_i_uv[0] r_u + e_i_uv[1] r_v.
  Vec2 e1_uv = Vec2::UnitX();
  Vec2 e2_uv = Vec2::UnitY();
  bool is_umbilic = false;

  [[nodiscard]] double mean_curvature() const noexcept { return 0.5 * (k1 + k2); }
  [[nodiscard]] double gaussian_curvature() const noexcept { return k1 * k2; }
  /// Unit tangent at angle theta from e1 toward e2.
  [[nodiscard]] Vec3 direction(double theta) const;
  [[nodiscard]] Vec2 direction_uv(double theta) const;
};

/// Umbilic threshold: k1 - k2 < 1e-7 * max(|k1|, |k2|, 1).
double umbilic_tolerance(double k1, double k2);

/// Unit normal (orientation flip applied) and its partial derivatives.
struct NormalJet {
  Vec3 n = Vec3::UnitZ();
  Vec3 n_u = Vec3::Zero();
  Vec3 n_v = Vec3::Zero();
};

/// Throws DegenerateChart when |r_u x r_v| is below the chart's regularity
/// threshold.
NormalJet normal_jet(const SurfaceChart& chart, const ChartJet& jet);

Mat2 first_form(const ChartJet& jet);
Mat2 second_form(const ChartJet& jet, const Vec3& normal);

/// Christoffel symbols of the first form: gamma[k](i, j) = Gamma^k_ij, with
/// index 0 = u and 1 = v.
std::array<Mat2, 2> christoffel(const ChartJet& jet);

/// Coordinates (a, b) of the tangent vector w = a r_u + b r_v (least squares
/// for vectors with a normal component).
Vec2 tangent_coordinates(const ChartJet& jet, const Vec3& w);

PointGeometry evaluate_point_geometry(const SurfaceChart& chart, double u, double v);

/// Rectangle in parameter space sampled on an nu x nv grid (endpoints
/// included).
struct ParamRegion {
  double u_min = 0.0, u_max = 1.0;
  double v_min = 0.0, v_max = 1.0;
  int nu = 8;
  int nv = 8;

  [[nodiscard]] double u_at(int i) const;
  [[nodiscard]] double v_at(int j) const;
};

/// Principal frame sampled on a grid, sign-aligned so that neighbouring
/// samples have <e1(p), e1(q)> > 0. Index (i, j) is stored at j * nu + i.
struct PrincipalFrameField {
  ParamRegion region;
  std::vector<PointGeometry> samples;

  [[nodiscard]] const PointGeometry& at(int i, int j) const {
    return samples[static_cast<std::size_t>(j * region.nu + i)];
  }
};

/// Throws UmbilicInRegion if any grid sample is umbilic. The seed is sample
/// (0, 0); the first row is aligned left to right, later rows against the
/// row below.
PrincipalFrameField principal_frame_field(const SurfaceChart& chart, const ParamRegion& region);

}  // namespace ballroll
