#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tcec {

enum class ErrorCode {
  NonSquare,
  WeightOutOfRange,
  NonzeroDiagonal,
  ZeroWeight,
  DuplicateEdge,
  ConceptOutOfRange,
  TooFewConcepts,
  SameConcept,
  DimensionMismatch,
  StateOutOfRange,
  InvalidArgument,
  InvalidSpec,
  InvalidPlan,
  BudgetExceeded,
  EmptyInput,
  Parse,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::ConceptOutOfRange: return "ConceptOutOfRange";
    case ErrorCode::TooFewConcepts: return "TooFewConcepts";
    case ErrorCode::SameConcept: return "SameConcept";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::StateOutOfRange: return "StateOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library. `line()` is set by the CSV readers
/// (1-based line of the offending input row).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(compose(code, message, line)),
        code_(code),
        message_(message),
        line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string compose(ErrorCode code, const std::string& message,
                             std::optional<std::size_t> line) {
    std::string out(to_string(code));
    if (line) out += " (line " + std::to_string(*line) + ")";
    out += ": ";
    out += message;
    return out;
  }

  ErrorCode code_;
  std::string message_;
  std::optional<std::size_t> line_;
};

}  // namespace tcec
