#pragma once

#include <stdexcept>
#include <string>

namespace projmet {

enum class ErrorCode {
  NonCollinear,
  IndeterminateCrossRatio,
  DimensionMismatch,
  DegenerateInput,
  DegenerateAuxiliary,
  DegenerateFrame,
  PointsNotInterior,
  CoincidentPoints,
  UnboundedBody,
  EmptyInterior,
  UnsupportedPair,
  NotNested,
  OutOfRange,
  CollinearTriple,
  DegenerateConstruction,
  InfeasibleFlats,
  OutsideDomain,
  Tangent,
  LineInAbsolute,
  ZeroDirection,
  PointOnHyperplane,
  NumericallyUnstable,
  InvalidSpec,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonCollinear: return "NonCollinear";
    case ErrorCode::IndeterminateCrossRatio: return "IndeterminateCrossRatio";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DegenerateAuxiliary: return "DegenerateAuxiliary";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::PointsNotInterior: return "PointsNotInterior";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::UnboundedBody: return "UnboundedBody";
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::UnsupportedPair: return "UnsupportedPair";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::CollinearTriple: return "CollinearTriple";
    case ErrorCode::DegenerateConstruction: return "DegenerateConstruction";
    case ErrorCode::InfeasibleFlats: return "InfeasibleFlats";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::Tangent: return "Tangent";
    case ErrorCode::LineInAbsolute: return "LineInAbsolute";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::PointOnHyperplane: return "PointOnHyperplane";
    case ErrorCode::NumericallyUnstable: return "NumericallyUnstable";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
  }
  return "UnknownError";
}

/// Library-wide exception. `code` identifies the failed precondition or
/// degeneracy; the message carries the context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

  /// True for failures of numeric conditioning rather than geometry.
  bool is_numeric() const { return code_ == ErrorCode::NumericallyUnstable; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace projmet
