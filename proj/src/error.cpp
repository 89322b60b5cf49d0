#include "freemult/error.hpp"

namespace freemult {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotProbability: return "NotProbability";
    case ErrorCode::NegativeSupport: return "NegativeSupport";
    case ErrorCode::DiracMeasure: return "DiracMeasure";
    case ErrorCode::OverlapError: return "OverlapError";
    case ErrorCode::InvalidPiece: return "InvalidPiece";
    case ErrorCode::MomentUndefined: return "MomentUndefined";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BranchViolation: return "BranchViolation";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::RealnessViolation: return "RealnessViolation";
    case ErrorCode::DenominatorDegenerate: return "DenominatorDegenerate";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::ExactnessLost: return "ExactnessLost";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotReached: return "NotReached";
    case ErrorCode::TOutOfRange: return "TOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace freemult
