#include "basp/error.hpp"

namespace basp {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateArc:
      return "DUPLICATE_ARC";
    case ErrorCode::kInvalidBounds:
      return "INVALID_BOUNDS";
    case ErrorCode::kInvalidArgument:
      return "INVALID_ARGUMENT";
    case ErrorCode::kNotAPath:
      return "NOT_A_PATH";
    case ErrorCode::kStartAboveCap:
      return "START_ABOVE_CAP";
    case ErrorCode::kEndAboveCap:
      return "END_ABOVE_CAP";
    case ErrorCode::kDomainMismatch:
      return "DOMAIN_MISMATCH";
    case ErrorCode::kEngineMismatch:
      return "ENGINE_MISMATCH";
    case ErrorCode::kUnbounded:
      return "UNBOUNDED";
    case ErrorCode::kKLimitExceeded:
      return "K_LIMIT_EXCEEDED";
    case ErrorCode::kBudgetExceeded:
      return "BUDGET_EXCEEDED";
    case ErrorCode::kNotUnitInstance:
      return "NOT_UNIT_INSTANCE";
    case ErrorCode::kParseError:
      return "PARSE_ERROR";
    case ErrorCode::kSchemaError:
      return "SCHEMA_ERROR";
    case ErrorCode::kDegenerate:
      return "DEGENERATE";
    case ErrorCode::kIo:
      return "IO_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace basp
