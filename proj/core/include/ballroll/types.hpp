#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ballroll {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

enum class ErrorKind {
  DegenerateChart,
  OutOfDomain,
  UmbilicInRegion,
  SingularCurve,
  DomainExit,
  StepFailure,
  NotRolling,
  NoCenter,
  BadDirections,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure raised by the library. The kind is what
/// callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when the existence condition for rolling fails: the contact curve
/// and the anti-development share normal curvature and geodesic torsion at
/// some instant.
class NotRollingError : public Error {
 public:
  NotRollingError(double t, const std::string& message)
      : Error(ErrorKind::NotRolling, message), t_(t) {}

  [[nodiscard]] double t() const noexcept { return t_; }

 private:
  double t_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace ballroll
