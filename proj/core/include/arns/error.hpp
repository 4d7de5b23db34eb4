#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arns {

enum class ErrorCode {
  InvalidArgument,
  EmptyState,
  GridTooCoarse,
  QuadratureNotConverged,
  DimensionOutOfRange,
  ConstraintViolated,
  ResolutionTooLow,
  AmplitudeOutOfRange,
  GratingUnresolvable,
  OrderOverlap,
  IoFailure,
};

std::string_view to_string(ErrorCode code);

/// Precondition violations, as opposed to failures discovered mid-computation.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace arns
