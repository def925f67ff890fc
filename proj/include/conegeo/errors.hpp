#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conegeo {

enum class ErrorCode {
  ParameterOutOfDomain,
  InsufficientMargin,
  InvalidCurve,
  SingularSpeed,
  VanishingCurvature,
  InsufficientSamples,
  ZeroMean,
  AmbiguousClass,
  DegenerateFit,
  NotRectifying,
  DegenerateBase,
  NotOnCone,
  VertexPoint,
  NonpositiveRadialCoordinate,
  BaseDomainExceeded,
  InvalidHalfAngle,
  InvalidParameters,
  VertexApproach,
  StepTooLarge,
  InvalidConfig,
  IoError,
};

/// Stable name used in reports and CLI diagnostics.
std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it without parsing messages.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace conegeo
