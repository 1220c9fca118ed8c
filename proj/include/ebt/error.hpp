#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ebt {

enum class ErrorCode {
  kNegativeWeight,
  kWeightsNotNormalized,
  kSuccessProbOutOfRange,
  kEmptyOutcomeList,
  kProbabilityOutOfRange,
  kLengthMismatch,
  kWrongArity,
  kPreconditionViolated,
  kInvalidParameters,
  kInvalidScenario,
  kDegenerateRealization,
  kInvalidNull,
  kEmptySample,
  kInvalidConfig,
};

std::string_view to_string(ErrorCode code);

/// Error raised by every validating operation in the library.
///
/// `field()` names the offending input (for example `outcomes[2].weight`)
/// when the failure can be traced to one; it is empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string field, const std::string& message);
  Error(ErrorCode code, const std::string& message) : Error(code, {}, message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }
  /// The message without the "Code (field): " prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string field_;
  std::string message_;
};

}  // namespace ebt
