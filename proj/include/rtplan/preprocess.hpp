#ifndef RTPLAN_PREPROCESS_HPP
#define RTPLAN_PREPROCESS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rtplan/lattice.hpp"
#include "rtplan/path.hpp"
#include "rtplan/planners/planner.hpp"

namespace rtplan {

// Ball {s : h(s, attractor) < radius} whose valid members all reach the
// attractor by greedy descent through valid edges.
struct Subregion {
  DiscreteState attractor;
  double radius = 0.0;
  std::uint32_t depth = 0;       // max greedy steps from a covered state
  std::uint32_t path_index = 0;  // into PreprocessArtifact::library

  bool covers(const DiscreteState& s, const LatticeDomain& domain) const {
    return domain.heuristic(s, attractor) < radius;
  }
  friend bool operator==(const Subregion&, const Subregion&) = default;
};

// Ball around an invalid state known to hold no valid uncovered state at the
// time it was recorded.
struct InvalidSubregion {
  DiscreteState center;
  double radius = 0.0;

  bool covers(const DiscreteState& s, const LatticeDomain& domain) const {
    return domain.heuristic(s, center) < radius;
  }
  friend bool operator==(const InvalidSubregion&, const InvalidSubregion&) = default;
};

// Deterministic counters only; wall-clock figures live in PreprocessReport so
// that artifacts stay byte-reproducible.
struct ArtifactStats {
  std::uint64_t seed = 0;
  std::vector<double> planner_timeouts;
  std::uint32_t subregions_before_prune = 0;
  std::uint32_t planner_calls = 0;
  std::uint32_t bad_attractors = 0;      // planner failures over all tiers
  std::uint32_t tiers_used = 0;
  std::uint32_t coverage_reseeds = 0;    // states re-seeded by the coverage sweep
  std::uint32_t valid_goal_states = 0;

  friend bool operator==(const ArtifactStats&, const ArtifactStats&) = default;
};

struct PreprocessArtifact {
  std::uint64_t domain_fingerprint = 0;
  DiscreteState start;
  double epsilon = 1e-6;
  std::uint32_t depth_cap = 0;  // 0 = uncapped
  std::vector<Subregion> subregions;  // radius descending
  std::vector<InvalidSubregion> invalid_subregions;
  std::vector<PlannedPath> library;
  // Attractors the planner could not connect to the start in any tier.
  std::vector<DiscreteState> orphans;
  ArtifactStats stats;

  bool complete() const noexcept { return orphans.empty(); }
  std::uint32_t max_depth() const noexcept;

  friend bool operator==(const PreprocessArtifact&, const PreprocessArtifact&) = default;
};

struct ReachabilityOptions {
  double epsilon = 1e-6;
  std::uint32_t depth_cap = 0;  // 0 = uncapped
};

// Optional instrumentation of a reachability run.
struct ReachabilityTrace {
  std::vector<double> popped_keys;
  std::vector<DiscreteState> reachable;  // every state marked reachable, in pop order
  std::vector<std::uint32_t> reachable_depths;
};

struct ReachabilityResult {
  std::vector<DiscreteState> frontier;  // unique, lexicographic order
  double radius = 0.0;
  std::uint32_t depth = 0;
  std::size_t reachable_size = 0;       // reachable states strictly inside the radius
  bool exhausted = false;
};

// Best-first reachability search around an attractor. Throws
// kInvalidAttractor when the attractor is invalid or outside the goal region.
ReachabilityResult compute_reachability(const DiscreteState& attractor, const LatticeDomain& domain,
                                        const ReachabilityOptions& options = {},
                                        ReachabilityTrace* trace = nullptr);

struct UncoveredSearchResult {
  std::optional<DiscreteState> found;
  double radius = 0.0;
};

// Best-first search from an invalid center over neighbours inside the goal
// region for the nearest valid state not covered by `subregions`.
UncoveredSearchResult find_valid_uncovered_state(const DiscreteState& center,
                                                 const std::vector<Subregion>& subregions,
                                                 const LatticeDomain& domain, double epsilon = 1e-6);

// Drops every subregion contained in a kept one by the triangle-inequality
// certificate h(a_j, a_i) + r_j <= r_i. Output is in radius-descending order.
std::vector<Subregion> prune_redundant(std::vector<Subregion> subregions, const LatticeDomain& domain);

// Radius descending, ties by attractor order.
void sort_by_radius(std::vector<Subregion>& subregions);

struct PreprocessConfig {
  std::vector<double> planner_timeouts{10.0, 60.0};
  double epsilon = 1e-6;
  std::uint32_t depth_cap = 0;
  std::uint64_t seed = 1;
  bool prune = true;
  // Re-seeds the covering loop from any valid state still uncovered once the
  // frontier sets run dry.
  bool coverage_sweep = true;
  // Sampled weak-monotonicity sanity check before preprocessing; 0 disables.
  std::size_t monotonicity_sample_pairs = 2000;
  // One line per subregion when set.
  std::ostream* log = nullptr;
};

struct PreprocessReport {
  double total_seconds = 0.0;
  double planner_seconds = 0.0;
  bool monotonicity_sample_ok = true;
  bool empty_goal = false;  // no valid state in the goal region
};

PreprocessArtifact preprocess_region(const LatticeDomain& domain, const DiscreteState& start,
                                     const OfflinePlanner& planner, const PreprocessConfig& config = {},
                                     PreprocessReport* report = nullptr);

}  // namespace rtplan

#endif  // RTPLAN_PREPROCESS_HPP
