#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hardylab {

enum class ErrorKind {
  MalformedPartition,
  NegativityDetected,
  LogPowerCap,
  DivergentAtZero,
  DivergentAtInfinity,
  NotMonotone,
  NormDiverges,
  NotConverged,
  BadExponent,
  DegenerateInput,
  EpsOutOfRange,
  InsufficientData,
  JumpDiscontinuity,
  NoDecayAtInfinity,
  NotRepresentable,
  EquivalenceViolated,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Structured failure raised by every hardylab operation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hardylab
