#ifndef RTPLAN_QUERY_HPP
#define RTPLAN_QUERY_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rtplan/parallel.hpp"
#include "rtplan/path.hpp"
#include "rtplan/preprocess.hpp"

namespace rtplan {

struct QueryStats {
  std::uint64_t subregion_scans = 0;
  std::uint64_t greedy_expansions = 0;
  std::uint64_t predecessor_evaluations = 0;
  std::uint64_t collision_checks = 0;
  double wall_time_s = 0.0;
  std::size_t subregion_index = 0;

  // Operation count compared against |R| + D * b.
  std::uint64_t ops() const noexcept { return subregion_scans + predecessor_evaluations; }
};

// First subregion in stored order whose ball holds `goal`. Throws kNotCovered
// when none does or the goal lies outside the goal region.
std::size_t find_covering_subregion(const DiscreteState& goal, const PreprocessArtifact& artifact,
                                    const LatticeDomain& domain, QueryStats* stats = nullptr);

// Greedy walk from goal to attractor, returned attractor -> goal. No validity
// checks. Throws kStepBudgetExceeded after `step_budget` steps.
PlannedPath find_greedy_path(const DiscreteState& attractor, const DiscreteState& goal,
                             const LatticeDomain& domain, std::size_t step_budget, QueryStats* stats = nullptr);

// Online query against an artifact whose fingerprint was checked once at
// construction. Immutable; query() may run concurrently.
class QueryEngine {
 public:
  QueryEngine(const PreprocessArtifact& artifact, const LatticeDomain& domain);

  PlannedPath query(const DiscreteState& goal, QueryStats* stats = nullptr) const;

  const PreprocessArtifact& artifact() const noexcept { return *artifact_; }
  const LatticeDomain& domain() const noexcept { return *domain_; }
  // Provable operation bound |R| + D_max * b.
  std::uint64_t ops_bound() const noexcept;

 private:
  const PreprocessArtifact* artifact_;
  const LatticeDomain* domain_;
};

// Single query including the fingerprint check.
PlannedPath compute_path(const DiscreteState& goal, const PreprocessArtifact& artifact,
                         const LatticeDomain& domain, QueryStats* stats = nullptr);

struct WorstCaseProfile {
  std::size_t goals = 0;
  double max_wall_time_s = 0.0;
  double mean_wall_time_s = 0.0;
  std::uint64_t max_ops = 0;
  DiscreteState argmax_goal;  // smallest goal attaining max_ops
  std::uint64_t ops_bound = 0;
  std::uint64_t work_bound_violations = 0;
  std::uint64_t collision_checks = 0;
};

// Runs every valid goal state through the query and reports the maxima.
// Rethrows the first query error (smallest failing goal).
WorstCaseProfile profile_worst_case(const PreprocessArtifact& artifact, const LatticeDomain& domain,
                                    Exec exec = Exec::kParallel);

struct CoverageAudit {
  std::size_t valid_states = 0;
  std::vector<DiscreteState> uncovered;  // lexicographic order

  bool ok() const noexcept { return uncovered.empty(); }
};

// Exhaustive check that every valid goal state lies in some subregion.
CoverageAudit audit_coverage(const PreprocessArtifact& artifact, const LatticeDomain& domain,
                             Exec exec = Exec::kParallel);

void write_query_stats(std::ostream& os, const QueryStats& stats);

}  // namespace rtplan

#endif  // RTPLAN_QUERY_HPP
