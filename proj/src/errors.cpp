#include "iiot/errors.hpp"

namespace iiot {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ValueOutOfDomain: return "ValueOutOfDomain";
    case Errc::NonLogicalResult: return "NonLogicalResult";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::Unstable: return "Unstable";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::Infeasible: return "Infeasible";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ValueOutOfRange: return "ValueOutOfRange";
    case Errc::StateNotInConstraint: return "StateNotInConstraint";
    case Errc::InitialStateViolatesConstraint: return "InitialStateViolatesConstraint";
    case Errc::NoCycle: return "NoCycle";
    case Errc::ScheduleViolation: return "ScheduleViolation";
    case Errc::InsufficientTrials: return "InsufficientTrials";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

}  // namespace iiot
