#ifndef RTPLAN_PLANNERS_RRT_CONNECT_HPP
#define RTPLAN_PLANNERS_RRT_CONNECT_HPP

#include <cstddef>
#include <cstdint>

#include "rtplan/planners/planner.hpp"

namespace rtplan {

struct RrtConnectOptions {
  std::uint64_t seed = 1;
  std::size_t max_iterations = 100'000;
  // Lattice steps taken by one extend operation.
  std::size_t max_extend_steps = 3;
  // Probability of sampling the other tree's root instead of a random state.
  double goal_bias = 0.05;
};

// Bidirectional RRT-Connect whose trees grow along lattice edges: extend and
// connect steer with greedy lattice steps and validate every edge, so the
// result is directly a lattice path. Not optimal.
PlanResult rrt_connect_plan(const DiscreteState& start, const DiscreteState& goal, const LatticeDomain& domain,
                            double timeout_s, const RrtConnectOptions& options = {});

class RrtConnectPlanner final : public OfflinePlanner {
 public:
  explicit RrtConnectPlanner(RrtConnectOptions options = {}) : options_(options) {}

  PlanResult plan(const LatticeDomain& domain, const DiscreteState& start, const DiscreteState& goal,
                  double timeout_s) const override {
    return rrt_connect_plan(start, goal, domain, timeout_s, options_);
  }
  std::string name() const override { return "rrt_connect"; }

 private:
  RrtConnectOptions options_;
};

}  // namespace rtplan

#endif  // RTPLAN_PLANNERS_RRT_CONNECT_HPP
