#include "conegeo/errors.hpp"

namespace conegeo {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParameterOutOfDomain: return "ParameterOutOfDomain";
    case ErrorCode::InsufficientMargin: return "InsufficientMargin";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::SingularSpeed: return "SingularSpeed";
    case ErrorCode::VanishingCurvature: return "VanishingCurvature";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::ZeroMean: return "ZeroMean";
    case ErrorCode::AmbiguousClass: return "AmbiguousClass";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::NotRectifying: return "NotRectifying";
    case ErrorCode::DegenerateBase: return "DegenerateBase";
    case ErrorCode::NotOnCone: return "NotOnCone";
    case ErrorCode::VertexPoint: return "VertexPoint";
    case ErrorCode::NonpositiveRadialCoordinate: return "NonpositiveRadialCoordinate";
    case ErrorCode::BaseDomainExceeded: return "BaseDomainExceeded";
    case ErrorCode::InvalidHalfAngle: return "InvalidHalfAngle";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::VertexApproach: return "VertexApproach";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace conegeo
