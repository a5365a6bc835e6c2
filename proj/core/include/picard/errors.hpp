#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace picard {

enum class ErrorCode {
  IncompatibleOperands,
  IndexOutOfRange,
  DegreeTooSmall,
  NotHomogeneous,
  NotLinear,
  InvariantViolation,
  ParseError,
  NotZeroDimensional,
  UnsupportedDoubleCurve,
  StrategyUnavailable,
  NoCompletion,
  NonUniqueCompletion,
  NotASolution,
  DegreeOverflow,
  ContractViolation,
  AssertionFailure,
  DivisionByCharacteristic,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// the command-line front end can emit machine-readable error records.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A loaded document broke one of the model invariants. `which` names the
/// invariant, `witness` is the offending point or generator in text form.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string which, std::string witness)
      : Error(ErrorCode::InvariantViolation,
              "invariant violated: " + which + " (witness: " + witness + ")"),
        which_(std::move(which)),
        witness_(std::move(witness)) {}

  const std::string& which() const noexcept { return which_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string which_;
  std::string witness_;
};

}  // namespace picard
