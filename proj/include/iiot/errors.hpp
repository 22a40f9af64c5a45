#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iiot {

enum class Errc {
  DimensionMismatch,
  ValueOutOfDomain,
  NonLogicalResult,
  SingularMatrix,
  Unstable,
  NoConvergence,
  Infeasible,
  PreconditionViolated,
  IndexOutOfRange,
  ValueOutOfRange,
  StateNotInConstraint,
  InitialStateViolatesConstraint,
  NoCycle,
  ScheduleViolation,
  InsufficientTrials,
  ParseError,
  ValidationError,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI's exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace iiot
