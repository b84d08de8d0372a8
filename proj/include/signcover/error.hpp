#pragma once

#include <stdexcept>
#include <string>

namespace signcover {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  NotCubic,
  NotConnected,
  NotFlowAdmissible,
  NotColorable,
  BudgetExceeded,
  LimitExceeded,
  PreconditionViolated,
  InvariantViolated,
  BoundViolation,
};

/// Machine-readable reason string, used verbatim by the CLI diagnostics.
inline const char* reason(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::NotCubic: return "not-cubic";
    case ErrorCode::NotConnected: return "not-connected";
    case ErrorCode::NotFlowAdmissible: return "not-flow-admissible";
    case ErrorCode::NotColorable: return "not-colorable";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::LimitExceeded: return "limit-exceeded";
    case ErrorCode::PreconditionViolated: return "precondition-violated";
    case ErrorCode::InvariantViolated: return "invariant-violated";
    case ErrorCode::BoundViolation: return "bound-violation";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace signcover
