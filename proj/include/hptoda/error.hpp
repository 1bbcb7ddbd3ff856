#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hptoda {

enum class ErrorKind {
  ParseError,
  ValidationError,
  DimensionTooLarge,
  SingularEvolution,
  DegenerateRoot,
  RootSelectionFailure,
  NonInvertibleFactor,
  SpecialPointMismatch,
  IllConditionedFiber,
  RepeatedEigenvalue,
  NoConvergence,
  DegenerateDivisor,
  CurveSingular,
  QuadratureNoConverge,
  SheetTrackingLost,
  BadPeriodMatrix,
  NotLatticePoint,
  ThetaZeroHit,
  CalibrationDrift,
  ConstraintViolated,
  IdentityMismatch,
  PreconditionFailed,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

  /// True for failures of a numerical procedure, as opposed to bad input.
  bool is_numeric() const noexcept;

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace hptoda
