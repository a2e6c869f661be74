#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mpcr {

enum class ErrorKind {
  OrderingViolation,
  EmptyPopulation,
  BadProbability,
  BadParameter,
  NegativeInput,
  DimensionMismatch,
  BadTolerance,
  SolverFailure,
  ToleranceUnattainable,
  OverflowRisk,
  CouplingViolation,
  EmptyInput,
  UnknownFigure,
  ConfigError,
  IoError,
};

// Coarse grouping used by the CLI to pick an exit status.
enum class ErrorCategory { Config, Numerical, Io };

std::string_view to_string(ErrorKind kind) noexcept;
ErrorCategory category(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mpcr
