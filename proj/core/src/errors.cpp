#include "picard/errors.hpp"

namespace picard {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::IncompatibleOperands: return "IncompatibleOperands";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::NotLinear: return "NotLinear";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotZeroDimensional: return "NotZeroDimensional";
    case ErrorCode::UnsupportedDoubleCurve: return "UnsupportedDoubleCurve";
    case ErrorCode::StrategyUnavailable: return "StrategyUnavailable";
    case ErrorCode::NoCompletion: return "NoCompletion";
    case ErrorCode::NonUniqueCompletion: return "NonUniqueCompletion";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::ContractViolation: return "ContractViolation";
    case ErrorCode::AssertionFailure: return "AssertionFailure";
    case ErrorCode::DivisionByCharacteristic: return "DivisionByCharacteristic";
  }
  return "Unknown";
}

}  // namespace picard
