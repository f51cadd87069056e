#pragma once

#include <stdexcept>
#include <string>

namespace idstab {

enum class ErrorCode {
  NonPositiveStep,
  ZeroKnots,
  ShapeMismatch,
  BoundOrderViolation,
  TailNotCompact,
  IndexOutOfRange,
  RhoTooLarge,
  InconsistentState,
  Defective,
  DegenerateZeroPolynomial,
  TangentCrossing,
  CounterDisagreement,
  NonTermination,
  StepTooCoarse,
  DegenerateLocus,
  PairingAmbiguity,
  ParseError,
  IoError,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveStep: return "NonPositiveStep";
    case ErrorCode::ZeroKnots: return "ZeroKnots";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BoundOrderViolation: return "BoundOrderViolation";
    case ErrorCode::TailNotCompact: return "TailNotCompact";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::RhoTooLarge: return "RhoTooLarge";
    case ErrorCode::InconsistentState: return "InconsistentState";
    case ErrorCode::Defective: return "Defective";
    case ErrorCode::DegenerateZeroPolynomial: return "DegenerateZeroPolynomial";
    case ErrorCode::TangentCrossing: return "TangentCrossing";
    case ErrorCode::CounterDisagreement: return "CounterDisagreement";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::DegenerateLocus: return "DegenerateLocus";
    case ErrorCode::PairingAmbiguity: return "PairingAmbiguity";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace idstab
