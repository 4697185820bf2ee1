#include "hardylab/error.hpp"

namespace hardylab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedPartition: return "MalformedPartition";
    case ErrorKind::NegativityDetected: return "NegativityDetected";
    case ErrorKind::LogPowerCap: return "LogPowerCap";
    case ErrorKind::DivergentAtZero: return "DivergentAtZero";
    case ErrorKind::DivergentAtInfinity: return "DivergentAtInfinity";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::NormDiverges: return "NormDiverges";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::JumpDiscontinuity: return "JumpDiscontinuity";
    case ErrorKind::NoDecayAtInfinity: return "NoDecayAtInfinity";
    case ErrorKind::NotRepresentable: return "NotRepresentable";
    case ErrorKind::EquivalenceViolated: return "EquivalenceViolated";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace hardylab
