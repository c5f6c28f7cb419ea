#include "rtplan/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <unordered_set>

#include "rtplan/error.hpp"
#include "rtplan/random.hpp"

namespace rtplan::fixtures {
namespace {

Box box2(std::int32_t x0, std::int32_t y0, std::int32_t x1, std::int32_t y1) { return {{x0, y0}, {x1, y1}}; }

// Lattice flood fill over free cells from `from`.
std::vector<DiscreteState> component(const GridWorld& g, const DiscreteState& from) {
  std::vector<DiscreteState> out;
  if (g.is_blocked(from)) return out;
  std::unordered_set<DiscreteState, DiscreteStateHash> seen{from};
  std::deque<DiscreteState> q{from};
  while (!q.empty()) {
    const DiscreteState s = q.front();
    q.pop_front();
    out.push_back(s);
    g.for_each_successor(s, [&](const DiscreteState& n) {
      if (!g.is_blocked(n) && seen.insert(n).second) q.push_back(n);
    });
  }
  return out;
}

}  // namespace

GridConfig random_grid(std::uint64_t seed, const RandomGridOptions& o) {
  Rng rng(seed);
  const std::int32_t n = o.size;
  GridConfig c;
  c.extents = {n, n};
  c.connectivity = o.connectivity;
  const std::int32_t g0 = (n - o.goal_size) / 2;
  c.goal = {box2(g0, g0, g0 + o.goal_size - 1, g0 + o.goal_size - 1)};

  const double density = rng.uniform_real(o.min_density, o.max_density);
  const auto target = static_cast<std::size_t>(density * n * n);
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(n) * n, 0);
  std::size_t blocked = 0;
  while (blocked < target) {
    const auto w = static_cast<std::int32_t>(1 + rng.uniform(static_cast<std::size_t>(o.max_block)));
    const auto h = static_cast<std::int32_t>(1 + rng.uniform(static_cast<std::size_t>(o.max_block)));
    const auto x = static_cast<std::int32_t>(rng.uniform(static_cast<std::size_t>(n - w + 1)));
    const auto y = static_cast<std::int32_t>(rng.uniform(static_cast<std::size_t>(n - h + 1)));
    for (std::int32_t i = x; i < x + w && blocked < target; ++i) {
      for (std::int32_t j = y; j < y + h && blocked < target; ++j) {
        auto& cell = occ[static_cast<std::size_t>(i) * n + j];
        if (cell == 0) {
          cell = 1;
          ++blocked;
        }
      }
    }
  }
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int32_t j = 0; j < n; ++j) {
      if (occ[static_cast<std::size_t>(i) * n + j] != 0) c.blocked.push_back({i, j});
    }
  }

  // Start: the free cell outside the goal box in the largest component.
  const GridWorld raw(c);
  std::vector<std::uint8_t> labelled(occ.size(), 0);
  std::vector<DiscreteState> best;
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int32_t j = 0; j < n; ++j) {
      const DiscreteState s{i, j};
      if (raw.is_blocked(s) || labelled[static_cast<std::size_t>(i) * n + j] != 0) continue;
      auto comp = component(raw, s);
      for (const auto& t : comp) labelled[static_cast<std::size_t>(t[0]) * n + t[1]] = 1;
      if (comp.size() > best.size()) best = std::move(comp);
    }
  }
  std::vector<DiscreteState> outside;
  for (const auto& s : best) {
    if (!c.goal.front().contains(s)) outside.push_back(s);
  }
  std::sort(outside.begin(), outside.end());
  if (outside.empty()) {
    // Degenerate clutter; retry with a derived seed.
    return random_grid(seed * 6364136223846793005ull + 1442695040888963407ull, o);
  }
  c.start = outside[rng.uniform(outside.size())];
  std::vector<std::uint8_t> keep(occ.size(), 0);
  for (const auto& s : best) keep[static_cast<std::size_t>(s[0]) * n + s[1]] = 1;
  c.blocked.clear();
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int32_t j = 0; j < n; ++j) {
      if (keep[static_cast<std::size_t>(i) * n + j] == 0) c.blocked.push_back({i, j});
    }
  }
  return c;
}

ArmScene random_arm(std::uint64_t seed, const RandomArmOptions& o) {
  Rng rng(seed);
  for (int attempt = 0; attempt < o.max_attempts; ++attempt) {
    ArmScene s;
    s.base = {0.0, 0.0};
    s.connectivity = Connectivity::kAxis;
    double reach = 0.0;
    for (std::size_t k = 0; k < o.links; ++k) {
      const double len = rng.uniform_real(0.5, 1.0);
      s.links.push_back(len);
      reach += len;
      s.joints.push_back({o.resolution_deg, -o.limit_deg, o.limit_deg});
    }
    const std::size_t circles = o.min_circles + rng.uniform(o.max_circles - o.min_circles + 1);
    for (std::size_t i = 0; i < circles; ++i) {
      const double dist = rng.uniform_real(0.45 * reach, 1.05 * reach);
      const double ang = rng.uniform_real(-std::numbers::pi, std::numbers::pi);
      s.circles.push_back({{dist * std::cos(ang), dist * std::sin(ang)}, rng.uniform_real(0.12, 0.3)});
    }
    const auto steps = static_cast<std::int32_t>(std::floor(o.limit_deg / o.resolution_deg));
    DiscreteState lo = DiscreteState::zeros(o.links);
    DiscreteState hi = DiscreteState::zeros(o.links);
    for (std::size_t k = 0; k < o.links; ++k) {
      const std::int32_t span = 2 * steps + 1 - o.goal_extent;
      lo[k] = -steps + static_cast<std::int32_t>(rng.uniform(static_cast<std::size_t>(span)));
      hi[k] = lo[k] + o.goal_extent - 1;
    }
    s.goal = {{lo, hi}};

    const PlanarArm arm(s);
    DiscreteState start = DiscreteState::zeros(o.links);
    bool found_start = arm.is_valid(start);
    for (int tries = 0; !found_start && tries < 200; ++tries) {
      start = rng.uniform_in(arm.joint_limits());
      found_start = arm.is_valid(start) && !arm.in_goal(start);
    }
    if (!found_start) continue;
    s.start = start;

    // Every valid goal state must be connected to the start.
    std::unordered_set<DiscreteState, DiscreteStateHash> seen{start};
    std::deque<DiscreteState> q{start};
    while (!q.empty()) {
      const DiscreteState u = q.front();
      q.pop_front();
      arm.for_each_successor(u, [&](const DiscreteState& v) {
        if (!arm.within_limits(v) || seen.count(v) != 0) return;
        if (arm.is_edge_valid(u, v)) {
          seen.insert(v);
          q.push_back(v);
        }
      });
    }
    bool ok = true;
    std::size_t valid_goals = 0;
    arm.goal_region().for_each([&](const DiscreteState& g) {
      if (!arm.is_valid(g)) return;
      ++valid_goals;
      if (seen.count(g) == 0) ok = false;
    });
    // Reject scenes where the obstacles miss the goal region entirely.
    if (ok && valid_goals > 0 && valid_goals < arm.goal_region().size()) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "could not generate a connected arm scene");
}

GridConfig empty_box(std::int32_t n, Connectivity connectivity) {
  GridConfig c;
  c.extents = {n, n};
  c.connectivity = connectivity;
  c.goal = {box2(0, 0, n - 1, n - 1)};
  c.start = DiscreteState{0, 0};
  return c;
}

GridConfig wall_box() {
  GridConfig c;
  c.extents = {24, 24};
  c.connectivity = Connectivity::kFull;
  c.goal = {box2(2, 2, 21, 21)};
  c.start = DiscreteState{0, 0};
  for (std::int32_t y = 7; y < 13; ++y) c.blocked.push_back({11, y});
  return c;
}

GridConfig corridor() {
  GridConfig c;
  c.extents = {60, 40};
  c.connectivity = Connectivity::kFull;
  c.goal = {box2(34, 4, 57, 35)};
  c.start = DiscreteState{3, 20};
  for (std::int32_t y = 0; y < 40; ++y) {
    if (y != 20) c.blocked.push_back({20, y});
  }
  // Baffles inside the goal room split it into several subregions.
  for (std::int32_t y = 4; y < 28; ++y) c.blocked.push_back({42, y});
  for (std::int32_t y = 12; y < 36; ++y) c.blocked.push_back({50, y});
  return c;
}

GridConfig two_boxes() {
  GridConfig c;
  c.extents = {16, 8};
  c.connectivity = Connectivity::kAxis;
  c.goal = {box2(0, 0, 4, 4), box2(10, 0, 14, 4)};
  c.start = DiscreteState{7, 6};
  return c;
}

GridConfig blocked_goal() {
  GridConfig c;
  c.extents = {12, 12};
  c.connectivity = Connectivity::kFull;
  c.goal = {box2(4, 4, 7, 7)};
  c.start = DiscreteState{0, 0};
  for (std::int32_t x = 4; x <= 7; ++x) {
    for (std::int32_t y = 4; y <= 7; ++y) c.blocked.push_back({x, y});
  }
  return c;
}

ArmScene arm_basic() {
  ArmScene s;
  s.links = {1.0, 0.8, 0.6};
  s.base = {0.0, 0.0};
  s.joints.assign(3, JointSpec{10.0, -170.0, 170.0});
  s.circles = {{{1.6, 0.9}, 0.25}, {{-0.4, 1.7}, 0.2}};
  s.connectivity = Connectivity::kAxis;
  s.goal = {{DiscreteState{-2, -6, -6}, DiscreteState{9, 5, 5}}};
  s.start = DiscreteState{-9, 0, 0};
  return s;
}

}  // namespace rtplan::fixtures
