#include "rtplan/error.hpp"

namespace rtplan {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kUsage: return "Usage";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInconsistentDims: return "InconsistentDims";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyPredecessors: return "EmptyPredecessors";
    case ErrorCode::kInvalidAttractor: return "InvalidAttractor";
    case ErrorCode::kStartInvalid: return "StartInvalid";
    case ErrorCode::kNotNeighbors: return "NotNeighbors";
    case ErrorCode::kNotCovered: return "NotCovered";
    case ErrorCode::kStepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::kPlannerFailure: return "PlannerFailure";
    case ErrorCode::kFingerprintMismatch: return "FingerprintMismatch";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kVersionUnsupported: return "VersionUnsupported";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kAssumptionViolated: return "AssumptionViolated";
    case ErrorCode::kAuditFailed: return "AuditFailed";
  }
  return "Unknown";
}

}  // namespace rtplan
