#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rtplan/domains/grid_world.hpp"
#include "rtplan/error.hpp"
#include "rtplan/fixtures.hpp"
#include "rtplan/planners/astar.hpp"
#include "rtplan/preprocess.hpp"
#include "rtplan/random.hpp"

using namespace rtplan;

namespace {

GridConfig random_small(std::uint64_t seed, std::int32_t n = 12) {
  GridConfig c;
  c.extents = {n, n};
  c.connectivity = seed % 3 == 0 ? Connectivity::kAxis : Connectivity::kFull;
  c.goal = {Box{{0, 0}, {n - 1, n - 1}}};
  Rng rng(seed);
  const int blocks = static_cast<int>(rng.uniform(static_cast<std::size_t>(n * n / 5))) + 3;
  for (int i = 0; i < blocks; ++i) c.blocked.push_back(rng.uniform_in(c.goal.front()));
  return c;
}

// Fails every attractor listed until the timeout reaches `needed`.
class PickyPlanner final : public OfflinePlanner {
 public:
  PickyPlanner(std::vector<DiscreteState> hard, double needed) : hard_(std::move(hard)), needed_(needed) {}
  PlanResult plan(const LatticeDomain& d, const DiscreteState& s, const DiscreteState& g, double t) const override {
    if (t < needed_ && std::find(hard_.begin(), hard_.end(), g) != hard_.end()) return {PlanStatus::kTimeout, {}, 0};
    return astar_plan(s, g, d, 10.0);
  }
  std::string name() const override { return "picky"; }

 private:
  std::vector<DiscreteState> hard_;
  double needed_;
};

void check_reachability_against_oracle(const GridWorld& g, const DiscreteState& attractor) {
  ReachabilityTrace trace;
  const ReachabilityResult r = compute_reachability(attractor, g, {}, &trace);
  const auto reach = oracle::reachable_by_walk(g, attractor);

  // Radius: the first valid state that cannot walk home, or exhaustion.
  CHECK(std::abs(r.radius - oracle::expected_radius(g, attractor, reach, 1e-6)) <= 1e-12);
  // Every valid state in the ball reaches the attractor, and vice versa.
  std::size_t inside = 0;
  std::uint32_t deepest = 0;
  g.goal_region().for_each([&](const DiscreteState& s) {
    if (oracle::h(g, s, attractor) >= r.radius) return;
    if (g.is_valid(s)) {
      ++inside;
      REQUIRE(reach.count(s) == 1);
      // Walk length bounded by the recorded depth.
      DiscreteState cur = s;
      std::uint32_t steps = 0;
      while (cur != attractor) {
        const DiscreteState nxt = oracle::greedy_pred(g, cur, attractor);
        REQUIRE(g.is_edge_valid(cur, nxt));
        cur = nxt;
        ++steps;
      }
      deepest = std::max(deepest, steps);
    } else {
      CHECK(reach.count(s) == 0);
    }
  });
  CHECK(r.reachable_size == inside);
  CHECK(r.depth == deepest);
  // Everything the search marked reachable really walks home.
  for (const auto& s : trace.reachable) CHECK(reach.count(s) == 1);
  CHECK(std::is_sorted(trace.popped_keys.begin(), trace.popped_keys.end()));
  // Frontier never contains covered states.
  for (const auto& f : r.frontier) CHECK(oracle::h(g, f, attractor) >= r.radius);
}

}  // namespace

TEST_CASE("reachability: empty 9x9 box exhausts with every state reachable") {
  const GridWorld g(fixtures::empty_box(9));
  ReachabilityTrace trace;
  const ReachabilityResult r = compute_reachability({4, 4}, g, {}, &trace);
  CHECK(r.exhausted);
  CHECK(r.frontier.empty());
  CHECK(r.reachable_size == 81);
  CHECK(trace.reachable.size() == 81);
  CHECK(r.radius == doctest::Approx(std::sqrt(32.0) + 1e-6).epsilon(1e-15));
  CHECK(r.depth == 4);
  const auto reach = oracle::reachable_by_walk(g, {4, 4});
  CHECK(reach.size() == 81);
}

TEST_CASE("reachability: wall beside the attractor ends at the first blocked-off state") {
  GridConfig c = fixtures::empty_box(11);
  for (std::int32_t y = 2; y <= 8; ++y) c.blocked.push_back({6, y});
  const GridWorld g(c);
  const ReachabilityResult r = compute_reachability({5, 5}, g);
  CHECK_FALSE(r.exhausted);
  CHECK(r.radius == doctest::Approx(2.0));
  CHECK(std::find(r.frontier.begin(), r.frontier.end(), DiscreteState{7, 5}) != r.frontier.end());
  check_reachability_against_oracle(g, {5, 5});
}

TEST_CASE("reachability: isolated attractor") {
  GridConfig c = fixtures::empty_box(9);
  for (const auto& p : full_primitives(2)) c.blocked.push_back(DiscreteState{4, 4} + p);
  const GridWorld g(c);
  const ReachabilityResult r = compute_reachability({4, 4}, g);
  CHECK(r.reachable_size == 1);
  CHECK(r.depth == 0);
  CHECK(r.radius == doctest::Approx(2.0));
}

TEST_CASE("reachability: invalid attractor") {
  GridConfig c = fixtures::empty_box(5);
  c.blocked = {{2, 2}};
  c.goal = {Box{{0, 0}, {3, 3}}};
  const GridWorld g(c);
  for (const DiscreteState& bad : {DiscreteState{2, 2}, DiscreteState{4, 4}}) {
    try {
      compute_reachability(bad, g);
      FAIL("expected InvalidAttractor");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidAttractor);
    }
  }
}

TEST_CASE("reachability agrees with greedy-walk simulation on random grids") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const GridWorld g(random_small(seed));
    const auto valid = oracle::valid_goal_states(g);
    Rng rng(seed);
    for (int k = 0; k < 4; ++k) check_reachability_against_oracle(g, valid[rng.uniform(valid.size())]);
  }
}

TEST_CASE("reachability: depth cap bounds every recorded depth") {
  const GridWorld g(fixtures::empty_box(15));
  ReachabilityOptions o;
  o.depth_cap = 3;
  const ReachabilityResult r = compute_reachability({7, 7}, g, o);
  CHECK(r.depth <= 3);
  CHECK_FALSE(r.exhausted);
  g.goal_region().for_each([&](const DiscreteState& s) {
    if (g.heuristic(s, {7, 7}) < r.radius) CHECK(std::max(std::abs(s[0] - 7), std::abs(s[1] - 7)) <= 3);
  });
}

TEST_CASE("uncovered-state search") {
  SUBCASE("valid uncovered neighbour") {
    GridConfig c = fixtures::empty_box(5, Connectivity::kAxis);
    c.blocked = {{2, 2}};
    const GridWorld g(c);
    const auto x = find_valid_uncovered_state({2, 2}, {}, g);
    REQUIRE(x.found.has_value());
    CHECK(x.radius == doctest::Approx(1.0));
    CHECK(*x.found == DiscreteState{1, 2});
  }
  SUBCASE("blob surrounded by covered states") {
    GridConfig c = fixtures::empty_box(9);
    for (std::int32_t x = 3; x <= 5; ++x) {
      for (std::int32_t y = 3; y <= 5; ++y) c.blocked.push_back({x, y});
    }
    const GridWorld g(c);
    const std::vector<Subregion> cover{{{0, 0}, 100.0, 0, 0}};
    const auto x = find_valid_uncovered_state({4, 4}, cover, g);
    CHECK_FALSE(x.found.has_value());
    // Exhaustive: no valid uncovered state exists, the ball spans the box.
    CHECK(oracle::uncovered(g, cover).empty());
    g.goal_region().for_each([&](const DiscreteState& s) {
      if (!g.is_valid(s)) CHECK(g.heuristic(s, {4, 4}) < x.radius);
    });
  }
  SUBCASE("single far valid cell") {
    GridConfig c = fixtures::empty_box(7);
    for (std::int32_t x = 0; x < 7; ++x) {
      for (std::int32_t y = 0; y < 7; ++y) {
        if (!(x == 6 && y == 5)) c.blocked.push_back({x, y});
      }
    }
    const GridWorld g(c);
    const auto x = find_valid_uncovered_state({0, 0}, {}, g);
    REQUIRE(x.found.has_value());
    CHECK(*x.found == DiscreteState{6, 5});
    CHECK(x.radius == doctest::Approx(std::sqrt(61.0)));
  }
}

TEST_CASE("pruning") {
  const GridWorld g(fixtures::empty_box(30));
  SUBCASE("contained ball is removed") {
    const auto kept = prune_redundant({{{0, 0}, 10.0, 3, 0}, {{1, 0}, 2.0, 1, 1}}, g);
    REQUIRE(kept.size() == 1);
    CHECK(kept.front().attractor == DiscreteState{0, 0});
  }
  SUBCASE("disjoint equal balls stay") {
    CHECK(prune_redundant({{{0, 0}, 3.0, 0, 0}, {{10, 10}, 3.0, 0, 1}}, g).size() == 2);
  }
  SUBCASE("identical balls keep the first in radius order") {
    const auto kept = prune_redundant({{{5, 5}, 3.0, 0, 7}, {{5, 5}, 3.0, 0, 2}}, g);
    REQUIRE(kept.size() == 1);
    CHECK(kept.front().path_index == 7);
  }
  SUBCASE("random sets keep the covered union") {
    const GridWorld small(fixtures::empty_box(16));
    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Subregion> rs;
      const int n = 2 + static_cast<int>(rng.uniform(12));
      for (int i = 0; i < n; ++i) {
        rs.push_back({rng.uniform_in(Box{{0, 0}, {15, 15}}), rng.uniform_real(0.5, 9.0), 0,
                      static_cast<std::uint32_t>(i)});
      }
      const auto kept = prune_redundant(rs, small);
      CHECK(kept.size() <= rs.size());
      CHECK(oracle::covered_set(small, rs) == oracle::covered_set(small, kept));
      for (std::size_t i = 1; i < kept.size(); ++i) CHECK(kept[i - 1].radius >= kept[i].radius);
    }
  }
}

TEST_CASE("preprocess: empty 9x9 box with the start outside collapses to one subregion") {
  GridConfig c;
  c.extents = {12, 12};
  c.connectivity = Connectivity::kFull;
  c.goal = {Box{{3, 3}, {11, 11}}};
  const GridWorld g(c);
  PreprocessConfig cfg;
  cfg.seed = 4;
  const PreprocessArtifact a = preprocess_region(g, {0, 0}, AStarPlanner(), cfg);
  REQUIRE(a.subregions.size() == 1);
  CHECK(oracle::uncovered(g, a.subregions).empty());
  CHECK(oracle::covered_set(g, a.subregions).size() == 81);
  CHECK(a.complete());
  CHECK(a.library.size() == 1);
  CHECK(oracle::audit(g, a.library[0], {0, 0}, a.subregions[0].attractor).empty());
}

TEST_CASE("preprocess: wall inside a 20x20 box needs several subregions") {
  const GridWorld g(fixtures::wall_box());
  for (std::uint64_t seed : {1, 2, 3}) {
    PreprocessConfig cfg;
    cfg.seed = seed;
    const PreprocessArtifact a = preprocess_region(g, {0, 0}, AStarPlanner(), cfg);
    CHECK(a.subregions.size() >= 2);
    CHECK(oracle::uncovered(g, a.subregions).empty());
    for (std::size_t i = 1; i < a.subregions.size(); ++i) CHECK(a.subregions[i - 1].radius >= a.subregions[i].radius);
    for (const auto& r : a.subregions) {
      CHECK(g.is_valid(r.attractor));
      CHECK(g.in_goal(r.attractor));
      CHECK(a.library.at(r.path_index).states.back() == r.attractor);
    }
  }
}

TEST_CASE("preprocess: blocked goal region terminates with nothing") {
  const GridWorld g(fixtures::blocked_goal());
  PreprocessReport rep;
  const PreprocessArtifact a = preprocess_region(g, {0, 0}, AStarPlanner(), {}, &rep);
  CHECK(a.subregions.empty());
  CHECK(a.library.empty());
  CHECK(rep.empty_goal);
  CHECK(a.complete());
}

TEST_CASE("preprocess: coverage on random grids, pruned and unpruned") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    GridConfig c = random_small(seed, 14);
    c.extents = {16, 16};
    const GridWorld g(c);
    DiscreteState start{15, 15};
    if (!g.is_valid(start)) continue;
    // Only goal states connected to the start can get a library path.
    const auto dist = oracle::dijkstra(g, start);
    PreprocessConfig cfg;
    cfg.seed = seed;
    cfg.prune = false;
    const PreprocessArtifact raw = preprocess_region(g, start, AStarPlanner(), cfg);
    cfg.prune = true;
    const PreprocessArtifact pruned = preprocess_region(g, start, AStarPlanner(), cfg);
    CHECK(raw.stats.subregions_before_prune == pruned.stats.subregions_before_prune);
    CHECK(oracle::covered_set(g, raw.subregions) == oracle::covered_set(g, pruned.subregions));
    for (const auto& s : oracle::uncovered(g, pruned.subregions)) {
      CHECK(dist.count(s) == 0);
    }
    for (const auto& o : pruned.orphans) CHECK(dist.count(o) == 0);
  }
}

TEST_CASE("preprocess: bad attractors are retried with the larger timeout") {
  const GridWorld g(fixtures::wall_box());
  PreprocessConfig cfg;
  cfg.seed = 2;
  cfg.planner_timeouts = {1.0, 60.0};
  // Learn which attractor would come first, then make it hard.
  const PreprocessArtifact plain = preprocess_region(g, {0, 0}, AStarPlanner(), cfg);
  std::vector<DiscreteState> hard;
  for (const auto& r : plain.subregions) hard.push_back(r.attractor);

  const PreprocessArtifact retried = preprocess_region(g, {0, 0}, PickyPlanner(hard, 60.0), cfg);
  CHECK(retried.complete());
  CHECK(retried.stats.bad_attractors > 0);
  CHECK(retried.stats.tiers_used == 2);
  CHECK(oracle::uncovered(g, retried.subregions).empty());

  cfg.planner_timeouts = {1.0, 5.0};
  cfg.coverage_sweep = false;
  const PreprocessArtifact stuck = preprocess_region(g, {0, 0}, PickyPlanner(hard, 60.0), cfg);
  CHECK_FALSE(stuck.complete());
}

TEST_CASE("preprocess: argument errors and the progress log") {
  GridConfig c = fixtures::wall_box();
  const GridWorld g(c);
  try {
    preprocess_region(g, {11, 8}, AStarPlanner());
    FAIL("expected StartInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kStartInvalid);
  }
  std::ostringstream log;
  PreprocessConfig cfg;
  cfg.log = &log;
  cfg.prune = false;
  const PreprocessArtifact a = preprocess_region(g, {0, 0}, AStarPlanner(), cfg);
  std::istringstream lines(log.str());
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    CHECK(line.rfind("subregion index=" + std::to_string(count) + " radius=", 0) == 0);
    CHECK(line.find(" depth=") != std::string::npos);
    CHECK(line.find(" reachable=") != std::string::npos);
    CHECK(line.find(" planner_ms=") != std::string::npos);
    ++count;
  }
  CHECK(count == a.subregions.size());
}

TEST_CASE("preprocess: two-box goal region is refused by the monotonicity probe only when it fails") {
  // Weak monotonicity holds for two boxes; only convexity breaks, and that is
  // an advisory check.
  const GridWorld g(fixtures::two_boxes());
  const PreprocessArtifact a = preprocess_region(g, {7, 6}, AStarPlanner());
  CHECK(a.complete());
}
