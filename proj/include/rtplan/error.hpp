#ifndef RTPLAN_ERROR_HPP
#define RTPLAN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace rtplan {

// Error categories are part of the CLI contract: their names are printed
// verbatim in machine-readable error records.
enum class ErrorCode {
  kUsage,
  kParse,
  kInconsistentDims,
  kDimensionMismatch,
  kInvalidArgument,
  kEmptyPredecessors,
  kInvalidAttractor,
  kStartInvalid,
  kNotNeighbors,
  kNotCovered,
  kStepBudgetExceeded,
  kPlannerFailure,
  kFingerprintMismatch,
  kChecksumMismatch,
  kVersionUnsupported,
  kIo,
  kAssumptionViolated,
  kAuditFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rtplan

#endif  // RTPLAN_ERROR_HPP
