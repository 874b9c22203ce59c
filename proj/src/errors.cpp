#include "hydro/errors.hpp"

namespace hydro {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonZeroVerticalMean: return "NonZeroVerticalMean";
    case ErrorCode::ZeroMeanViolation: return "ZeroMeanViolation";
    case ErrorCode::CompatibilityViolation: return "CompatibilityViolation";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::BarotropicViolation: return "BarotropicViolation";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NonPositiveError: return "NonPositiveError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace hydro
