#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

enum class ErrorCode {
  // input / usage
  MalformedToken,
  NotStrictlyIncreasing,
  NonPositiveEntry,
  EmptyInput,
  NonPositiveInput,
  DimensionMismatch,
  NonPositiveScalar,
  InconsistentProfile,
  NotFeasible,
  NotSquare,
  SingularMatrix,
  NotCovered,
  NotFCovered,
  ZeroVector,
  HypothesisViolated,
  UnsupportedDimension,
  CheckpointCorrupt,
  // theorem-backed assertions; raising one of these means a bug, not bad input
  InternalInfeasibility,
  UnboundedDirection,
  BoundViolation,
  EquivalenceViolation,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

  /// True when the failure contradicts a guarantee the math provides.
  bool internal() const {
    switch (code_) {
      case ErrorCode::InternalInfeasibility:
      case ErrorCode::UnboundedDirection:
      case ErrorCode::BoundViolation:
      case ErrorCode::EquivalenceViolation:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace spectra
