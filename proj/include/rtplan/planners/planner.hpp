#ifndef RTPLAN_PLANNERS_PLANNER_HPP
#define RTPLAN_PLANNERS_PLANNER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "rtplan/lattice.hpp"
#include "rtplan/path.hpp"

namespace rtplan {

enum class PlanStatus {
  kFound,
  kTimeout,
  kDisconnected,
  kInvalidEndpoint,
};

std::string_view to_string(PlanStatus status) noexcept;

struct PlanResult {
  PlanStatus status = PlanStatus::kDisconnected;
  std::optional<PlannedPath> path;
  std::size_t expansions = 0;

  bool found() const noexcept { return status == PlanStatus::kFound; }
};

// The offline planner used to build the path library. Given identical
// (domain, start, goal) and configuration, results are identical unless the
// wall-clock timeout fires.
class OfflinePlanner {
 public:
  virtual ~OfflinePlanner() = default;
  virtual PlanResult plan(const LatticeDomain& domain, const DiscreteState& start,
                          const DiscreteState& goal, double timeout_s) const = 0;
  virtual std::string name() const = 0;
};

}  // namespace rtplan

#endif  // RTPLAN_PLANNERS_PLANNER_HPP
