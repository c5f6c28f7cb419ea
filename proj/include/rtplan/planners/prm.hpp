#ifndef RTPLAN_PLANNERS_PRM_HPP
#define RTPLAN_PLANNERS_PRM_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "rtplan/path.hpp"

namespace rtplan {

struct PrmOptions {
  // Either budget ending first stops the build; a zero budget yields an
  // empty roadmap on which every query fails.
  std::size_t max_vertices = 1000;
  double max_seconds = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 1;
  // Fraction of samples drawn from the goal region (off by default).
  double goal_bias = 0.0;
};

struct RoadmapEdge {
  std::uint32_t to = 0;
  double cost = 0.0;

  friend bool operator==(const RoadmapEdge&, const RoadmapEdge&) = default;
};

// Vertex 0 is the start. Every vertex keeps its shortest roadmap distance and
// parent towards the start, which plays the role of a stored path to start.
struct Roadmap {
  std::uint64_t domain_fingerprint = 0;
  std::vector<DiscreteState> vertices;
  std::vector<std::vector<RoadmapEdge>> adjacency;
  std::vector<double> cost_to_start;
  std::vector<std::int64_t> parent;  // -1 at the start or when unreachable
  std::size_t samples_drawn = 0;

  bool empty() const noexcept { return vertices.empty(); }
  std::size_t edge_count() const noexcept;

  friend bool operator==(const Roadmap&, const Roadmap&) = default;
};

// Neighbour count of the asymptotically optimal connection rule,
// k = e (1 + 1/d) log n, rounded up and at least 1.
std::size_t prm_connection_k(std::size_t n, std::size_t dimension);

// Lattice local planner: greedy steps from the lexicographically smaller
// endpoint to the larger one, every edge validated. Returns the states from
// `a` to `b`, or nothing on collision.
std::optional<std::vector<DiscreteState>> prm_local_path(const LatticeDomain& domain, const DiscreteState& a,
                                                         const DiscreteState& b);

Roadmap prm_build(const LatticeDomain& domain, const DiscreteState& start, const PrmOptions& options);

struct PrmQueryStats {
  std::uint64_t distance_evaluations = 0;
  std::uint64_t validity_checks = 0;
  std::uint64_t connection_attempts = 0;
};

// Connect-only query: tries the k nearest roadmap vertices that reach the
// start and returns start -> goal through the first successful connection.
std::optional<PlannedPath> prm_query(const Roadmap& roadmap, const LatticeDomain& domain,
                                     const DiscreteState& goal, PrmQueryStats* stats = nullptr);

void save_roadmap(std::ostream& os, const Roadmap& roadmap);
Roadmap load_roadmap(std::istream& is, const LatticeDomain& domain);
std::size_t roadmap_bytes(const Roadmap& roadmap);

}  // namespace rtplan

#endif  // RTPLAN_PLANNERS_PRM_HPP
