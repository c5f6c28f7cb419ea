#include "rtplan/path.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "rtplan/error.hpp"

namespace rtplan {

PlannedPath make_path(std::vector<DiscreteState> states, const LatticeDomain& domain) {
  PlannedPath path;
  path.cost = path_cost(states, domain);
  path.states = std::move(states);
  return path;
}

PlannedPath reversed(const PlannedPath& path) {
  PlannedPath out = path;
  std::reverse(out.states.begin(), out.states.end());
  return out;
}

PathAudit audit_path(const LatticeDomain& domain, const PlannedPath& path,
                     const DiscreteState& start, const DiscreteState& goal) {
  auto fail = [](std::string reason) { return PathAudit{false, std::move(reason)}; };
  if (path.empty()) return fail("empty path");
  if (path.front() != start) return fail("path starts at " + path.front().to_string());
  if (path.back() != goal) return fail("path ends at " + path.back().to_string());
  for (const auto& s : path.states) {
    if (s.size() != domain.dimension()) return fail("dimension mismatch at " + s.to_string());
    if (!domain.is_valid(s)) return fail("invalid state " + s.to_string());
  }
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto& a = path.states[i - 1];
    const auto& b = path.states[i];
    if (!domain.is_neighbor(a, b)) {
      return fail("non-adjacent step " + a.to_string() + " -> " + b.to_string());
    }
    if (!domain.is_edge_valid(a, b)) {
      return fail("invalid edge " + a.to_string() + " -> " + b.to_string());
    }
  }
  const double cost = path_cost(path.states, domain);
  if (std::abs(cost - path.cost) > 1e-9 * std::max(1.0, cost)) {
    return fail("recorded cost differs from recomputed cost");
  }
  return {};
}

void write_path(std::ostream& os, const PlannedPath& path) {
  os << "# rtplan-path 1\n";
  os << "# states " << path.size() << "\n";
  os << "# cost " << std::setprecision(17) << path.cost << "\n";
  for (const auto& s : path.states) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k) os << ' ';
      os << s[k];
    }
    os << '\n';
  }
}

PlannedPath read_path(std::istream& is, const LatticeDomain& domain) {
  std::vector<DiscreteState> states;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    DiscreteState s = parse_state(line);
    domain.check_dimension(s);
    states.push_back(s);
  }
  return make_path(std::move(states), domain);
}

}  // namespace rtplan
