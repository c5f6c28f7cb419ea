#include "rtplan/planners/rrt_connect.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <unordered_map>
#include <vector>

#include "rtplan/random.hpp"

namespace rtplan {
namespace {

class Tree {
 public:
  explicit Tree(const DiscreteState& root) { add(root, kNoParent); }

  static constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

  std::size_t add(const DiscreteState& s, std::size_t parent) {
    nodes_.push_back(s);
    parents_.push_back(parent);
    index_.emplace(s, nodes_.size() - 1);
    return nodes_.size() - 1;
  }
  bool contains(const DiscreteState& s) const { return index_.count(s) != 0; }
  std::size_t index_of(const DiscreteState& s) const { return index_.at(s); }
  const DiscreteState& node(std::size_t i) const { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }

  std::size_t nearest(const DiscreteState& q, const LatticeDomain& d) const {
    std::size_t best = 0;
    double best_h = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double h = d.heuristic(nodes_[i], q);
      if (h < best_h) {
        best_h = h;
        best = i;
      }
    }
    return best;
  }

  // Root-to-node state sequence.
  std::vector<DiscreteState> branch(std::size_t i) const {
    std::vector<DiscreteState> out;
    for (; i != kNoParent; i = parents_[i]) out.push_back(nodes_[i]);
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<DiscreteState> nodes_;
  std::vector<std::size_t> parents_;
  std::unordered_map<DiscreteState, std::size_t, DiscreteStateHash> index_;
};

enum class Growth { kTrapped, kAdvanced, kReached };

// Grows `tree` from its node nearest to `target` by up to max_steps greedy
// lattice steps. Returns the index of the last node added or reached.
Growth grow(Tree& tree, const DiscreteState& target, const LatticeDomain& d, std::size_t max_steps,
            std::size_t& last) {
  std::size_t cur = tree.nearest(target, d);
  last = cur;
  if (tree.node(cur) == target) return Growth::kReached;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const DiscreteState next = greedy_predecessor(tree.node(cur), target, d);
    if (tree.contains(next)) {
      // Already part of the tree through another branch; continue from there.
      cur = tree.index_of(next);
    } else {
      if (!d.is_edge_valid(tree.node(cur), next)) return step == 0 ? Growth::kTrapped : Growth::kAdvanced;
      cur = tree.add(next, cur);
    }
    last = cur;
    if (tree.node(cur) == target) return Growth::kReached;
  }
  return Growth::kAdvanced;
}

}  // namespace

PlanResult rrt_connect_plan(const DiscreteState& start, const DiscreteState& goal, const LatticeDomain& domain,
                            double timeout_s, const RrtConnectOptions& options) {
  domain.check_dimension(start);
  domain.check_dimension(goal);
  PlanResult result;
  if (!(timeout_s > 0.0)) {
    result.status = PlanStatus::kTimeout;
    return result;
  }
  if (!domain.is_valid(start) || !domain.is_valid(goal)) {
    result.status = PlanStatus::kInvalidEndpoint;
    return result;
  }
  if (start == goal) {
    result.status = PlanStatus::kFound;
    result.path = make_path({start}, domain);
    return result;
  }
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_s);
  const Box bounds = domain.sampling_bounds();
  // Each connect step strictly lowers h to the target, so this only guards
  // against malformed heuristics.
  constexpr std::size_t connect_cap = 1'000'000;
  Rng rng(options.seed);
  Tree from_start(start);
  Tree from_goal(goal);
  bool a_is_start = true;

  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    if (iter % 64 == 63 && std::chrono::steady_clock::now() > deadline) {
      result.status = PlanStatus::kTimeout;
      return result;
    }
    Tree& a = a_is_start ? from_start : from_goal;
    Tree& b = a_is_start ? from_goal : from_start;
    // The first sample aims straight at the other root, so adjacent
    // endpoints connect in a single extend.
    const bool aim_at_root = iter == 0 || rng.unit() < options.goal_bias;
    const DiscreteState q = aim_at_root ? b.node(0) : rng.uniform_in(bounds);
    ++result.expansions;

    std::size_t a_last = 0;
    if (grow(a, q, domain, options.max_extend_steps, a_last) != Growth::kTrapped) {
      const DiscreteState q_new = a.node(a_last);
      std::size_t b_last = 0;
      Growth g = Growth::kAdvanced;
      for (std::size_t c = 0; c < connect_cap && g == Growth::kAdvanced; ++c) {
        g = grow(b, q_new, domain, 1, b_last);
      }
      if (g == Growth::kReached) {
        std::vector<DiscreteState> head = a.branch(a_last);
        std::vector<DiscreteState> tail = b.branch(b_last);
        // head: root(a) .. q_new, tail: root(b) .. q_new.
        tail.pop_back();
        std::reverse(tail.begin(), tail.end());
        head.insert(head.end(), tail.begin(), tail.end());
        if (!a_is_start) std::reverse(head.begin(), head.end());
        result.status = PlanStatus::kFound;
        result.path = make_path(std::move(head), domain);
        return result;
      }
    }
    a_is_start = !a_is_start;
  }
  result.status = PlanStatus::kTimeout;
  return result;
}

}  // namespace rtplan
