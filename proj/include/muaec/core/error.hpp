#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace muaec {

/// Every failure the library reports is an `Error` tagged with one of these
/// kinds. Audit violations are data, never errors.
enum class ErrorCode {
  kInvalidArgument,
  kVocabularyMismatch,
  kBudgetExceeded,
  kNotAMember,
  kPrecondition,
  kCoherence,
  kParameterMismatch,
  kOutOfClosure,
  kNotInP,
  kInternalContradiction,
  kIncompleteCatalog,
  kCompletenessViolation,
  kAmalgamationFailure,
  kParse,
  kIo,
  kUsage,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace muaec
