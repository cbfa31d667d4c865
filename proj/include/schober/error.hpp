#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schober {

enum class ErrorCode {
  DimensionMismatch,
  ShapeMismatch,
  Singular,
  BadModulus,
  Overflow,
  NotInteger,
  IndexOutOfRange,
  NotDirectSum,
  CrossMapSingular,
  RelationViolated,
  SingularGenerator,
  NotComposable,
  MissingFactorization,
  TruncationBoundary,
  BoundaryMismatch,
  MonodromyNotTwist,
  BadLoop,
  HalfMonodromyMismatch,
  GlobalRelationFails,
  NotCalabiYau,
  Unsupported,
  Parse,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotInteger: return "NotInteger";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotDirectSum: return "NotDirectSum";
    case ErrorCode::CrossMapSingular: return "CrossMapSingular";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::SingularGenerator: return "SingularGenerator";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::MissingFactorization: return "MissingFactorization";
    case ErrorCode::TruncationBoundary: return "TruncationBoundary";
    case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::MonodromyNotTwist: return "MonodromyNotTwist";
    case ErrorCode::BadLoop: return "BadLoop";
    case ErrorCode::HalfMonodromyMismatch: return "HalfMonodromyMismatch";
    case ErrorCode::GlobalRelationFails: return "GlobalRelationFails";
    case ErrorCode::NotCalabiYau: return "NotCalabiYau";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI) can tell usage problems from mathematical ones.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A failed check inside a report: which condition broke, and on what.
struct Failure {
  ErrorCode code;
  std::string label;
  std::string message;
};

}  // namespace schober
