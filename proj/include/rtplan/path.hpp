#ifndef RTPLAN_PATH_HPP
#define RTPLAN_PATH_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "rtplan/lattice.hpp"
#include "rtplan/state.hpp"

namespace rtplan {

// Ordered lattice states; cost is the sum of h over consecutive pairs.
struct PlannedPath {
  std::vector<DiscreteState> states;
  double cost = 0.0;

  bool empty() const noexcept { return states.empty(); }
  std::size_t size() const noexcept { return states.size(); }
  const DiscreteState& front() const { return states.front(); }
  const DiscreteState& back() const { return states.back(); }

  friend bool operator==(const PlannedPath&, const PlannedPath&) = default;
};

PlannedPath make_path(std::vector<DiscreteState> states, const LatticeDomain& domain);
PlannedPath reversed(const PlannedPath& path);

struct PathAudit {
  bool ok = true;
  std::string reason;
};

// Independent after-the-fact check: endpoints, lattice adjacency, state and
// edge validity, and cost. Performs collision checks, so never call it from
// inside a timed query.
PathAudit audit_path(const LatticeDomain& domain, const PlannedPath& path,
                     const DiscreteState& start, const DiscreteState& goal);

// Path file: '#' header lines, then one state per line as
// whitespace-separated integers.
void write_path(std::ostream& os, const PlannedPath& path);
PlannedPath read_path(std::istream& is, const LatticeDomain& domain);

}  // namespace rtplan

#endif  // RTPLAN_PATH_HPP
