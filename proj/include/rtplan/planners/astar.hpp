#ifndef RTPLAN_PLANNERS_ASTAR_HPP
#define RTPLAN_PLANNERS_ASTAR_HPP

#include <cstddef>

#include "rtplan/planners/planner.hpp"

namespace rtplan {

// Optimal A* over the full lattice. Edge cost is h between neighbours and the
// heuristic towards the goal is h itself, which is consistent for a metric h.
PlanResult astar_plan(const DiscreteState& start, const DiscreteState& goal, const LatticeDomain& domain,
                      double timeout_s, std::size_t max_expansions = 50'000'000);

class AStarPlanner final : public OfflinePlanner {
 public:
  explicit AStarPlanner(std::size_t max_expansions = 50'000'000) : max_expansions_(max_expansions) {}

  PlanResult plan(const LatticeDomain& domain, const DiscreteState& start, const DiscreteState& goal,
                  double timeout_s) const override {
    return astar_plan(start, goal, domain, timeout_s, max_expansions_);
  }
  std::string name() const override { return "astar"; }

 private:
  std::size_t max_expansions_;
};

}  // namespace rtplan

#endif  // RTPLAN_PLANNERS_ASTAR_HPP
