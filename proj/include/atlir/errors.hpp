#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace atlir {

enum class ErrorCode {
  UnknownState,
  UnknownAgent,
  UnknownAction,
  UnknownProposition,
  DisabledJointAction,
  CoalitionMismatch,
  AgentNotInCoalition,
  SyntaxError,
  UnsupportedOperator,
  PreconditionViolation,
  EnumerationCapExceeded,
  IncompleteStrategy,
  ParseError,
  CapExceeded,
  InvalidModel,
  LimitExceeded,
};

std::string_view to_string(ErrorCode code);

/// Exception type for every recoverable failure in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace atlir
