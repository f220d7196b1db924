#pragma once

#include <ballroll/types.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>

namespace ballroll {

/// Closed rectangle [u_min,u_max] x [v_min,v_max]. A periodic coordinate is
/// wrapped into its interval instead of being rejected.
struct ParamDomain {
  double u_min = 0.0;
  double u_max = 1.0;
  double v_min = 0.0;
  double v_max = 1.0;
  bool u_periodic = false;
  bool v_periodic = false;

  [[nodiscard]] bool contains(double u, double v) const;
  [[nodiscard]] std::pair<double, double> wrap(double u, double v) const;
  [[nodiscard]] double diameter() const;
};

/// Position and partial derivatives up to second order at a chart point.
struct ChartJet {
  Vec3 r = Vec3::Zero();
  Vec3 r_u = Vec3::Zero();
  Vec3 r_v = Vec3::Zero();
  Vec3 r_uu = Vec3::Zero();
  Vec3 r_uv = Vec3::Zero();
  Vec3 r_vv = Vec3::Zero();
};

struct PrincipalPair {
  double k1 = 0.0;
  double k2 = 0.0;
};

/// A C2 parametric surface patch. Normals are (r_u x r_v)/|r_u x r_v|,
/// negated when the orientation flip is set; every curvature quantity in the
/// library is signed with respect to that normal.
///
/// Charts are cheap to copy (the evaluators are shared function objects) and
/// immutable once built.
class SurfaceChart {
 public:
  using MapFn = std::function<Vec3(double, double)>;
  using JetFn = std::function<ChartJet(double, double)>;
  using CurvatureFn = std::function<PrincipalPair(double, double)>;

  /// `length_scale` is a characteristic length of the surface; it scales the
  /// regularity threshold on |r_u x r_v|.
  SurfaceChart(std::string name, ParamDomain domain, MapFn map, JetFn jet = {},
               double length_scale = 1.0);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const ParamDomain& domain() const noexcept { return domain_; }
  [[nodiscard]] bool orientation_flip() const noexcept { return flip_; }
  [[nodiscard]] bool has_analytic_derivatives() const noexcept {
    return static_cast<bool>(jet_);
  }
  [[nodiscard]] double length_scale() const noexcept { return length_scale_; }

  /// Minimum admissible |r_u x r_v|.
  [[nodiscard]] double regularity_threshold() const noexcept;

  [[nodiscard]] Vec3 point(double u, double v) const;

  /// Analytic jet when available, finite differences otherwise.
  /// Throws OutOfDomain for points outside a non-periodic coordinate range.
  [[nodiscard]] ChartJet jet(double u, double v) const;

  /// Central finite differences of the map with steps cbrt(eps) (first
  /// derivatives) and eps^(1/4) (second derivatives), scaled by |coordinate|.
  [[nodiscard]] ChartJet finite_difference_jet(double u, double v) const;

  /// Same chart with the normal negated.
  [[nodiscard]] SurfaceChart flipped() const;

  /// Attaches known closed-form principal curvatures for the current
  /// orientation. Used by tests to check the generic shape-operator path.
  SurfaceChart& with_closed_form(CurvatureFn fn);
  [[nodiscard]] std::optional<PrincipalPair> closed_form_curvatures(double u,
                                                                    double v) const;

  void check_domain(double u, double v) const;

 private:
  std::string name_;
  ParamDomain domain_;
  MapFn map_;
  JetFn jet_;
  CurvatureFn closed_form_;
  double length_scale_ = 1.0;
  bool flip_ = false;
};

/// Agreement required between analytic derivatives and finite differences.
inline constexpr double kDerivativeTolerance = 1e-6;

/// Largest deviation between the analytic jet and central finite differences
/// of the map at (u,v), relative to max(1, |derivative|). Zero for charts
/// without analytic derivatives.
double derivative_consistency(const SurfaceChart& chart, double u, double v);

}  // namespace ballroll
