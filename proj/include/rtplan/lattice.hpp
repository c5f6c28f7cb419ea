#ifndef RTPLAN_LATTICE_HPP
#define RTPLAN_LATTICE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rtplan/fingerprint.hpp"
#include "rtplan/goal_region.hpp"
#include "rtplan/state.hpp"

namespace rtplan {

// Heuristic values closer than this are treated as equal; the tie-break
// order on states decides between them.
inline constexpr double kHeuristicTieTolerance = 1e-12;

// Per-thread count of validity evaluations. Domains bump it on every state or
// edge check so callers can prove a code path performed no collision checks.
namespace instrumentation {
std::uint64_t validity_checks() noexcept;
void count_validity_check() noexcept;
}  // namespace instrumentation

struct LatticeSpec {
  std::size_t dimension = 0;
  std::vector<MotionPrimitive> primitives;
  // Per-axis heuristic weights; empty means all 1.0.
  std::vector<double> weights;
  GoalRegion goal;
  // Physical units per lattice step, documentation only.
  std::vector<double> resolution;
};

// ± unit step along every axis (2n neighbours).
std::vector<MotionPrimitive> axis_primitives(std::size_t dimension);
// Every non-zero offset in {-1, 0, 1}^n (3^n - 1 neighbours).
std::vector<MotionPrimitive> full_primitives(std::size_t dimension);

// The discretized configuration space every planner component consumes.
//
// Succs(s) = {s + p} and Preds(s) = {s - p} over the primitive list, in list
// order. The primitive set is required to be closed under negation, so the
// induced graph is undirected. Instances are immutable after construction and
// safe to share between threads.
class LatticeDomain {
 public:
  virtual ~LatticeDomain() = default;

  std::size_t dimension() const noexcept { return spec_.dimension; }
  std::size_t branching_factor() const noexcept { return spec_.primitives.size(); }
  const std::vector<MotionPrimitive>& primitives() const noexcept { return spec_.primitives; }
  const std::vector<double>& weights() const noexcept { return spec_.weights; }
  const std::vector<double>& resolution() const noexcept { return spec_.resolution; }
  const GoalRegion& goal_region() const noexcept { return spec_.goal; }
  bool in_goal(const DiscreteState& s) const noexcept { return spec_.goal.contains(s); }

  std::vector<DiscreteState> successors(const DiscreteState& s) const;
  std::vector<DiscreteState> predecessors(const DiscreteState& s) const;

  template <class F>
  void for_each_predecessor(const DiscreteState& s, F&& f) const {
    for (const auto& p : spec_.primitives) f(s - p);
  }
  template <class F>
  void for_each_successor(const DiscreteState& s, F&& f) const {
    for (const auto& p : spec_.primitives) f(s + p);
  }

  // True when b - a is one of the primitives.
  bool is_neighbor(const DiscreteState& a, const DiscreteState& b) const noexcept;

  // Weighted Euclidean distance over lattice coordinates.
  virtual double heuristic(const DiscreteState& a, const DiscreteState& b) const;

  virtual bool is_valid(const DiscreteState& s) const = 0;
  // Requires is_neighbor(a, b); throws kNotNeighbors otherwise.
  virtual bool is_edge_valid(const DiscreteState& a, const DiscreteState& b) const = 0;
  virtual std::uint64_t fingerprint() const = 0;
  virtual std::string kind() const = 0;
  // Region from which sampling planners draw states.
  virtual Box sampling_bounds() const = 0;

  // Throws kDimensionMismatch when s does not match this domain.
  void check_dimension(const DiscreteState& s) const;

 protected:
  explicit LatticeDomain(LatticeSpec spec);
  LatticeDomain(const LatticeDomain&) = default;
  LatticeDomain& operator=(const LatticeDomain&) = default;

  // Hashes the lattice part of the configuration (primitives, weights,
  // resolution, goal boxes) into a running fingerprint.
  void fingerprint_lattice(Fnv1a& hasher) const;

 private:
  LatticeSpec spec_;
};

// The predecessor of s with minimal h(., target), ties broken by the
// lexicographic state order. Throws kEmptyPredecessors for a domain without
// primitives.
DiscreteState greedy_predecessor(const DiscreteState& s, const DiscreteState& target,
                                 const LatticeDomain& domain);

// Repeated greedy_predecessor steps from `from` towards `to`, both endpoints
// included. Performs no validity checks. Returns an empty vector when `to`
// is not reached within max_steps.
std::vector<DiscreteState> greedy_descent(const LatticeDomain& domain, const DiscreteState& from,
                                          const DiscreteState& to, std::size_t max_steps);

// Lattice path cost under the heuristic metric; used for every edge cost.
double path_cost(const std::vector<DiscreteState>& states, const LatticeDomain& domain);

}  // namespace rtplan

#endif  // RTPLAN_LATTICE_HPP
