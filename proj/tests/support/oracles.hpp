#ifndef RTPLAN_TESTS_ORACLES_HPP
#define RTPLAN_TESTS_ORACLES_HPP

// Brute-force reference implementations used to check the library. None of
// these call into the planner code paths they are checking; they only use
// the domain's raw Succs/validity interface.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rtplan/lattice.hpp"
#include "rtplan/path.hpp"
#include "rtplan/preprocess.hpp"

namespace oracle {

using rtplan::DiscreteState;
using rtplan::LatticeDomain;
using StateSet = std::unordered_set<DiscreteState, rtplan::DiscreteStateHash>;

// sqrt(sum (w_k * d_k)^2), written out independently.
double h(const DiscreteState& a, const DiscreteState& b, const std::vector<double>& weights);
double h(const LatticeDomain& d, const DiscreteState& a, const DiscreteState& b);

// Exhaustive argmin over s - p for every primitive p; ties within 1e-12
// resolved towards the lexicographically smallest state.
DiscreteState greedy_pred(const LatticeDomain& d, const DiscreteState& s, const DiscreteState& target);

// Single-source Dijkstra over valid states and valid edges inside the
// domain's sampling bounds. Edge cost = h.
std::unordered_map<DiscreteState, double, rtplan::DiscreteStateHash> dijkstra(const LatticeDomain& d,
                                                                             const DiscreteState& source);

// Goal states whose greedy chain towards `attractor` reaches it through
// valid edges without leaving the goal region.
StateSet reachable_by_walk(const LatticeDomain& d, const DiscreteState& attractor);

// Radius the reachability search must return: the smallest h among valid
// goal states that do not reach the attractor, or (max h over the goal
// region) + epsilon when every valid state reaches it.
double expected_radius(const LatticeDomain& d, const DiscreteState& attractor, const StateSet& reachable,
                       double epsilon);

// Valid goal states not inside any subregion ball.
std::vector<DiscreteState> uncovered(const LatticeDomain& d, const std::vector<rtplan::Subregion>& subregions);

// Goal states inside at least one ball (valid or not).
StateSet covered_set(const LatticeDomain& d, const std::vector<rtplan::Subregion>& subregions);

// Independent path check; empty string when the path is fine.
std::string audit(const LatticeDomain& d, const rtplan::PlannedPath& path, const DiscreteState& start,
                  const DiscreteState& goal);

std::vector<DiscreteState> valid_goal_states(const LatticeDomain& d);

}  // namespace oracle

#endif  // RTPLAN_TESTS_ORACLES_HPP
