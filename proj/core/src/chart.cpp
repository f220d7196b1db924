#include <ballroll/chart.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

namespace ballroll {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateChart: return "DegenerateChart";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::UmbilicInRegion: return "UmbilicInRegion";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::DomainExit: return "DomainExit";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::NotRolling: return "NotRolling";
    case ErrorKind::NoCenter: return "NoCenter";
    case ErrorKind::BadDirections: return "BadDirections";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, fmt::format("{}: {}", to_string(kind), message));
}

namespace {

double wrap_periodic(double x, double lo, double hi) {
  const double period = hi - lo;
  double y = std::fmod(x - lo, period);
  if (y < 0.0) y += period;
  return lo + y;
}

// Slack for round-off when a coordinate lands on the boundary.
constexpr double kDomainSlack = 1e-12;

}  // namespace

bool ParamDomain::contains(double u, double v) const {
  const double su = kDomainSlack * std::max(1.0, u_max - u_min);
  const double sv = kDomainSlack * std::max(1.0, v_max - v_min);
  const bool u_ok = u_periodic || (u >= u_min - su && u <= u_max + su);
  const bool v_ok = v_periodic || (v >= v_min - sv && v <= v_max + sv);
  return u_ok && v_ok && std::isfinite(u) && std::isfinite(v);
}

std::pair<double, double> ParamDomain::wrap(double u, double v) const {
  if (u_periodic) u = wrap_periodic(u, u_min, u_max);
  if (v_periodic) v = wrap_periodic(v, v_min, v_max);
  return {u, v};
}

double ParamDomain::diameter() const { return std::hypot(u_max - u_min, v_max - v_min); }

SurfaceChart::SurfaceChart(std::string name, ParamDomain domain, MapFn map, JetFn jet,
                           double length_scale)
    : name_(std::move(name)),
      domain_(domain),
      map_(std::move(map)),
      jet_(std::move(jet)),
      length_scale_(length_scale) {
  if (!map_) fail(ErrorKind::InvalidArgument, "surface chart needs a map");
  if (!(domain_.u_max > domain_.u_min) || !(domain_.v_max > domain_.v_min)) {
    fail(ErrorKind::InvalidArgument, "empty parameter domain");
  }
  if (!(length_scale_ > 0.0)) fail(ErrorKind::InvalidArgument, "length scale must be positive");
}

double SurfaceChart::regularity_threshold() const noexcept {
  return 1e-10 * length_scale_ * length_scale_;
}

void SurfaceChart::check_domain(double u, double v) const {
  if (!domain_.contains(u, v)) {
    fail(ErrorKind::OutOfDomain,
         fmt::format("({}, {}) outside [{}, {}] x [{}, {}] of chart '{}'", u, v, domain_.u_min,
                     domain_.u_max, domain_.v_min, domain_.v_max, name_));
  }
}

Vec3 SurfaceChart::point(double u, double v) const {
  check_domain(u, v);
  const auto [uw, vw] = domain_.wrap(u, v);
  return map_(uw, vw);
}

ChartJet SurfaceChart::jet(double u, double v) const {
  check_domain(u, v);
  const auto [uw, vw] = domain_.wrap(u, v);
  if (jet_) return jet_(uw, vw);
  return finite_difference_jet(uw, vw);
}

ChartJet SurfaceChart::finite_difference_jet(double u, double v) const {
  const double eps = std::numeric_limits<double>::epsilon();
  const double h1u = std::cbrt(eps) * std::max(1.0, std::abs(u));
  const double h1v = std::cbrt(eps) * std::max(1.0, std::abs(v));
  const double h2u = std::pow(eps, 0.25) * std::max(1.0, std::abs(u));
  const double h2v = std::pow(eps, 0.25) * std::max(1.0, std::abs(v));

  ChartJet j;
  j.r = map_(u, v);
  j.r_u = (map_(u + h1u, v) - map_(u - h1u, v)) / (2.0 * h1u);
  j.r_v = (map_(u, v + h1v) - map_(u, v - h1v)) / (2.0 * h1v);
  j.r_uu = (map_(u + h2u, v) - 2.0 * j.r + map_(u - h2u, v)) / (h2u * h2u);
  j.r_vv = (map_(u, v + h2v) - 2.0 * j.r + map_(u, v - h2v)) / (h2v * h2v);
  j.r_uv = (map_(u + h2u, v + h2v) - map_(u + h2u, v - h2v) - map_(u - h2u, v + h2v) +
            map_(u - h2u, v - h2v)) /
           (4.0 * h2u * h2v);
  return j;
}

SurfaceChart SurfaceChart::flipped() const {
  SurfaceChart out = *this;
  out.flip_ = !flip_;
  if (closed_form_) {
    auto base = closed_form_;
    out.closed_form_ = [base](double u, double v) {
      const PrincipalPair k = base(u, v);
      return PrincipalPair{-k.k2, -k.k1};
    };
  }
  return out;
}

SurfaceChart& SurfaceChart::with_closed_form(CurvatureFn fn) {
  closed_form_ = std::move(fn);
  return *this;
}

std::optional<PrincipalPair> SurfaceChart::closed_form_curvatures(double u, double v) const {
  if (!closed_form_) return std::nullopt;
  const auto [uw, vw] = domain_.wrap(u, v);
  return closed_form_(uw, vw);
}

double derivative_consistency(const SurfaceChart& chart, double u, double v) {
  if (!chart.has_analytic_derivatives()) return 0.0;
  const ChartJet a = chart.jet(u, v);
  const auto [uw, vw] = chart.domain().wrap(u, v);
  const ChartJet fd = chart.finite_difference_jet(uw, vw);
  auto rel = [](const Vec3& x, const Vec3& y) {
    return (x - y).norm() / std::max(1.0, x.norm());
  };
  return std::max({rel(a.r, fd.r), rel(a.r_u, fd.r_u), rel(a.r_v, fd.r_v), rel(a.r_uu, fd.r_uu),
                   rel(a.r_uv, fd.r_uv), rel(a.r_vv, fd.r_vv)});
}

}  // namespace ballroll
