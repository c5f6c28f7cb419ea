#include "rtplan/planners/astar.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <unordered_map>
#include <vector>

namespace rtplan {

std::string_view to_string(PlanStatus status) noexcept {
  switch (status) {
    case PlanStatus::kFound: return "found";
    case PlanStatus::kTimeout: return "timeout";
    case PlanStatus::kDisconnected: return "disconnected";
    case PlanStatus::kInvalidEndpoint: return "invalid_endpoint";
  }
  return "unknown";
}

namespace {

struct Node {
  double g = 0.0;
  DiscreteState parent;
  bool has_parent = false;
  bool closed = false;
};

struct Entry {
  double f;
  double h;
  DiscreteState s;
};

// Min-heap on f, then h (deeper first), then state order.
struct EntryGreater {
  bool operator()(const Entry& a, const Entry& b) const noexcept {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.s > b.s;
  }
};

}  // namespace

PlanResult astar_plan(const DiscreteState& start, const DiscreteState& goal, const LatticeDomain& domain,
                      double timeout_s, std::size_t max_expansions) {
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
  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_s);

  std::unordered_map<DiscreteState, Node, DiscreteStateHash> nodes;
  std::priority_queue<Entry, std::vector<Entry>, EntryGreater> open;
  nodes[start] = Node{};
  const double h0 = domain.heuristic(start, goal);
  open.push({h0, h0, start});

  while (!open.empty()) {
    const Entry e = open.top();
    open.pop();
    Node& node = nodes[e.s];
    if (node.closed) continue;
    node.closed = true;
    const double g = node.g;
    if (e.s == goal) {
      std::vector<DiscreteState> states{goal};
      DiscreteState cur = goal;
      while (nodes[cur].has_parent) {
        cur = nodes[cur].parent;
        states.push_back(cur);
      }
      std::reverse(states.begin(), states.end());
      result.status = PlanStatus::kFound;
      result.path = make_path(std::move(states), domain);
      return result;
    }
    ++result.expansions;
    if (result.expansions % 128 == 0 && std::chrono::steady_clock::now() > deadline) {
      result.status = PlanStatus::kTimeout;
      return result;
    }
    if (result.expansions > max_expansions) {
      result.status = PlanStatus::kTimeout;
      return result;
    }
    domain.for_each_successor(e.s, [&](const DiscreteState& t) {
      auto it = nodes.find(t);
      if (it != nodes.end() && it->second.closed) return;
      const double g2 = g + domain.heuristic(e.s, t);
      if (it != nodes.end() && it->second.g <= g2) return;
      if (!domain.is_edge_valid(e.s, t)) return;
      Node& n = nodes[t];
      n.g = g2;
      n.parent = e.s;
      n.has_parent = true;
      const double h = domain.heuristic(t, goal);
      open.push({g2 + h, h, t});
    });
  }
  result.status = PlanStatus::kDisconnected;
  return result;
}

}  // namespace rtplan
