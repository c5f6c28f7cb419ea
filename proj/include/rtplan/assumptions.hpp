#ifndef RTPLAN_ASSUMPTIONS_HPP
#define RTPLAN_ASSUMPTIONS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rtplan/lattice.hpp"
#include "rtplan/parallel.hpp"

namespace rtplan {

struct CheckerConfig {
  // Exhaustive checking runs while |G_S|^2 stays within this many pairs;
  // beyond it the checkers fall back to uniformly sampled pairs.
  std::size_t pair_budget = 4'000'000;
  std::size_t sample_pairs = 200'000;
  std::uint64_t seed = 1;
  // Only the first violations are stored; the count is always exact.
  std::size_t max_reported = 1000;
  Exec exec = Exec::kParallel;
};

using StatePair = std::pair<DiscreteState, DiscreteState>;

struct AssumptionReport {
  std::string check;
  bool sampled = false;
  std::size_t pairs_checked = 0;
  std::size_t violation_count = 0;
  std::vector<StatePair> violations;  // sorted, truncated to max_reported

  bool holds() const noexcept { return violation_count == 0; }
};

// For every distinct (s1, s2) in G_S: min over Preds(s1) of h(., s2) must not
// exceed h(s1, s2).
AssumptionReport check_weak_monotonicity(const LatticeDomain& domain, const CheckerConfig& config = {});

// For every distinct (s1, s2) in G_S: the greedy predecessor of s1 towards s2
// must lie in G_S.
AssumptionReport check_goal_convexity(const LatticeDomain& domain, const CheckerConfig& config = {});

// Sanity check of the tie-break order (antisymmetry, transitivity, totality)
// on sampled triples of goal states.
AssumptionReport check_tie_break_order(const LatticeDomain& domain, const CheckerConfig& config = {});

}  // namespace rtplan

#endif  // RTPLAN_ASSUMPTIONS_HPP
