#include "ebt/error.hpp"

namespace ebt {

namespace {

std::string compose(ErrorCode code, const std::string& field, const std::string& message) {
  std::string out(to_string(code));
  if (!field.empty()) {
    out += " (" + field + ")";
  }
  out += ": " + message;
  return out;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeWeight: return "NegativeWeight";
    case ErrorCode::kWeightsNotNormalized: return "WeightsNotNormalized";
    case ErrorCode::kSuccessProbOutOfRange: return "SuccessProbOutOfRange";
    case ErrorCode::kEmptyOutcomeList: return "EmptyOutcomeList";
    case ErrorCode::kProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kWrongArity: return "WrongArity";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kInvalidParameters: return "InvalidParameters";
    case ErrorCode::kInvalidScenario: return "InvalidScenario";
    case ErrorCode::kDegenerateRealization: return "DegenerateRealization";
    case ErrorCode::kInvalidNull: return "InvalidNull";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string field, const std::string& message)
    : std::runtime_error(compose(code, field, message)), code_(code), field_(std::move(field)), message_(message) {}

}  // namespace ebt
