#include "hptoda/error.hpp"

namespace hptoda {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::SingularEvolution: return "SingularEvolution";
    case ErrorKind::DegenerateRoot: return "DegenerateRoot";
    case ErrorKind::RootSelectionFailure: return "RootSelectionFailure";
    case ErrorKind::NonInvertibleFactor: return "NonInvertibleFactor";
    case ErrorKind::SpecialPointMismatch: return "SpecialPointMismatch";
    case ErrorKind::IllConditionedFiber: return "IllConditionedFiber";
    case ErrorKind::RepeatedEigenvalue: return "RepeatedEigenvalue";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateDivisor: return "DegenerateDivisor";
    case ErrorKind::CurveSingular: return "CurveSingular";
    case ErrorKind::QuadratureNoConverge: return "QuadratureNoConverge";
    case ErrorKind::SheetTrackingLost: return "SheetTrackingLost";
    case ErrorKind::BadPeriodMatrix: return "BadPeriodMatrix";
    case ErrorKind::NotLatticePoint: return "NotLatticePoint";
    case ErrorKind::ThetaZeroHit: return "ThetaZeroHit";
    case ErrorKind::CalibrationDrift: return "CalibrationDrift";
    case ErrorKind::ConstraintViolated: return "ConstraintViolated";
    case ErrorKind::IdentityMismatch: return "IdentityMismatch";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
  }
  return "Unknown";
}

bool Error::is_numeric() const noexcept {
  switch (kind_) {
    case ErrorKind::IllConditionedFiber:
    case ErrorKind::RepeatedEigenvalue:
    case ErrorKind::NoConvergence:
    case ErrorKind::QuadratureNoConverge:
    case ErrorKind::SheetTrackingLost:
    case ErrorKind::NotLatticePoint:
    case ErrorKind::ThetaZeroHit:
    case ErrorKind::CalibrationDrift:
      return true;
    default:
      return false;
  }
}

}  // namespace hptoda
