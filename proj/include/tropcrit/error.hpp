#ifndef TROPCRIT_ERROR_HPP
#define TROPCRIT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropcrit {

enum class ErrorCode {
  CoeffOfZero,
  NonPositiveValuation,
  NotUnitLeading,
  NotPositive,
  DimensionMismatch,
  InvalidArgument,
  NoPointAboveZero,
  TargetNotInHull,
  NotTransversal,
  WrongDimension,
  NotComplete,
  InvariantViolation,
  MaxIterExceeded,
  StalledProgress,
  NonPrimitiveRay,
  EmptyPolytope,
  Unbounded,
  NotLaurent,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CoeffOfZero: return "CoeffOfZero";
    case ErrorCode::NonPositiveValuation: return "NonPositiveValuation";
    case ErrorCode::NotUnitLeading: return "NotUnitLeading";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoPointAboveZero: return "NoPointAboveZero";
    case ErrorCode::TargetNotInHull: return "TargetNotInHull";
    case ErrorCode::NotTransversal: return "NotTransversal";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::StalledProgress: return "StalledProgress";
    case ErrorCode::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorCode::EmptyPolytope: return "EmptyPolytope";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NotLaurent: return "NotLaurent";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable error code. Every failure raised by
/// the library is one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tropcrit

#endif  // TROPCRIT_ERROR_HPP
