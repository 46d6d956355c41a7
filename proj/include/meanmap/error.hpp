#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace meanmap {

enum class ErrorCode {
  DomainViolation,
  ArityMismatch,
  InternalityBreach,
  SchemaError,
  WeightSumError,
  InvalidParams,
  ConstantInput,
  NonConvergent,
  PrecisionBudgetExceeded,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::InternalityBreach: return "InternalityBreach";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::WeightSumError: return "WeightSumError";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ConstantInput: return "ConstantInput";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::PrecisionBudgetExceeded: return "PrecisionBudgetExceeded";
  }
  return "Unknown";
}

/// Every library failure is reported through this type. `detail()` carries a
/// machine-readable locator: a JSON pointer for SchemaError, the violated
/// inequality for InvalidParams, the offending field otherwise (may be empty).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message),
        detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  /// Message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::string detail_;
};

}  // namespace meanmap
