#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace freemult {

enum class ErrorCode {
  ParseError,
  NotProbability,
  NegativeSupport,
  DiracMeasure,
  OverlapError,
  InvalidPiece,
  MomentUndefined,
  DomainError,
  BranchViolation,
  ToleranceNotMet,
  EmptySet,
  GridTooCoarse,
  RealnessViolation,
  DenominatorDegenerate,
  NoConvergence,
  NotInvertible,
  ExactnessLost,
  HypothesisViolated,
  NotReached,
  TOutOfRange,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Every module reports failures through this type; `code()` is the
/// machine-readable tag the CLI prints.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace freemult
