#include "arns/error.hpp"

namespace arns {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyState: return "EmptyState";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::ResolutionTooLow: return "ResolutionTooLow";
    case ErrorCode::AmplitudeOutOfRange: return "AmplitudeOutOfRange";
    case ErrorCode::GratingUnresolvable: return "GratingUnresolvable";
    case ErrorCode::OrderOverlap: return "OrderOverlap";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::EmptyState:
    case ErrorCode::DimensionOutOfRange:
    case ErrorCode::ConstraintViolated:
    case ErrorCode::ResolutionTooLow:
    case ErrorCode::AmplitudeOutOfRange:
    case ErrorCode::GratingUnresolvable:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace arns
