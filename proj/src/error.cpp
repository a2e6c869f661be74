#include "mpcr/error.hpp"

namespace mpcr {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::OrderingViolation: return "OrderingViolation";
    case ErrorKind::EmptyPopulation: return "EmptyPopulation";
    case ErrorKind::BadProbability: return "BadProbability";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadTolerance: return "BadTolerance";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::ToleranceUnattainable: return "ToleranceUnattainable";
    case ErrorKind::OverflowRisk: return "OverflowRisk";
    case ErrorKind::CouplingViolation: return "CouplingViolation";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::UnknownFigure: return "UnknownFigure";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "UnknownError";
}

ErrorCategory category(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SolverFailure:
    case ErrorKind::ToleranceUnattainable:
    case ErrorKind::OverflowRisk:
    case ErrorKind::CouplingViolation:
      return ErrorCategory::Numerical;
    case ErrorKind::IoError:
      return ErrorCategory::Io;
    default:
      return ErrorCategory::Config;
  }
}

}  // namespace mpcr
