#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace basp {

enum class ErrorCode {
  kDuplicateArc,
  kInvalidBounds,
  kInvalidArgument,
  kNotAPath,
  kStartAboveCap,
  kEndAboveCap,
  kDomainMismatch,
  kEngineMismatch,
  kUnbounded,
  kKLimitExceeded,
  kBudgetExceeded,
  kNotUnitInstance,
  kParseError,
  kSchemaError,
  kDegenerate,
  kIo,
};

std::string_view ToString(ErrorCode code);

// All contract violations raised by the library carry one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ToString(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace basp
