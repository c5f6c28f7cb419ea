#include <algorithm>
#include <cmath>
#include <functional>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rtplan/domains/geometry.hpp"
#include "rtplan/domains/grid_world.hpp"
#include "rtplan/domains/load.hpp"
#include "rtplan/domains/planar_arm.hpp"
#include "rtplan/error.hpp"
#include "rtplan/fixtures.hpp"
#include "rtplan/random.hpp"

using namespace rtplan;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an rtplan::Error");
  return ErrorCode::kUsage;
}

GridConfig parse(const std::string& text) {
  std::istringstream is(text);
  return parse_gridmap(is);
}

ArmScene two_link(double circle_x, double circle_y, double radius) {
  ArmScene s;
  s.links = {1.0, 1.0};
  s.joints.assign(2, JointSpec{10.0, -170.0, 170.0});
  s.circles = {{{circle_x, circle_y}, radius}};
  s.goal = {{DiscreteState{-1, -1}, DiscreteState{1, 1}}};
  return s;
}

// Distance from p to segment ab, derived from scratch for the arm checks.
double seg_dist(double px, double py, double ax, double ay, double bx, double by) {
  const double vx = bx - ax, vy = by - ay;
  double t = ((px - ax) * vx + (py - ay) * vy) / (vx * vx + vy * vy);
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (ax + t * vx), py - (ay + t * vy));
}

}  // namespace

TEST_CASE("grid validity and edge validity") {
  GridConfig c = fixtures::empty_box(5);
  c.blocked = {{2, 2}};
  const GridWorld g(c);
  CHECK(g.is_valid({0, 0}));
  CHECK_FALSE(g.is_valid({2, 2}));
  CHECK_FALSE(g.is_valid({5, 0}));
  CHECK_FALSE(g.is_valid({-1, 0}));
  CHECK(g.is_edge_valid({0, 0}, {1, 1}));
  CHECK_FALSE(g.is_edge_valid({1, 1}, {2, 2}));
  CHECK(code_of([&] { g.is_edge_valid({0, 0}, {2, 0}); }) == ErrorCode::kNotNeighbors);
  CHECK(code_of([&] { g.is_valid({0, 0, 0}); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("validity calls are counted") {
  const GridWorld g(fixtures::empty_box(5));
  const auto before = instrumentation::validity_checks();
  g.is_valid({1, 1});
  g.is_edge_valid({1, 1}, {1, 2});
  CHECK(instrumentation::validity_checks() - before >= 3);
  const auto mid = instrumentation::validity_checks();
  g.heuristic({0, 0}, {3, 3});
  g.successors({1, 1});
  CHECK(instrumentation::validity_checks() == mid);
}

TEST_CASE("grid map: raster walls become the occupied set") {
  const GridConfig c = parse(
      "rtplan-gridmap 1\n"
      "dims 4 3\n"
      "connectivity 4\n"
      "goal 0 0 3 2\n"
      "raster\n"
      "#...\n"
      "..#.\n"
      "...#\n");
  const GridWorld g(c);
  CHECK(g.obstacle_count() == 3);
  CHECK(g.is_blocked({0, 0}));
  CHECK(g.is_blocked({2, 1}));
  CHECK(g.is_blocked({3, 2}));
  CHECK_FALSE(g.is_blocked({1, 0}));
  CHECK(g.branching_factor() == 4);
}

TEST_CASE("grid map: empty body, blocked list, and round trip") {
  const GridConfig empty = parse("rtplan-gridmap 1\ndims 3 3\ngoal 0 0 2 2\n");
  CHECK(empty.blocked.empty());
  const GridConfig listed = parse(
      "rtplan-gridmap 1\n# comment\ndims 3 3 3\nconnectivity full\nweights 1 2 3\ngoal 0 0 0 2 2 2\nstart 1 1 1\n"
      "blocked\n0 0 0\n2 2 2\n");
  CHECK(listed.blocked.size() == 2);
  CHECK(listed.weights == std::vector<double>{1, 2, 3});
  REQUIRE(listed.start.has_value());
  CHECK(*listed.start == DiscreteState{1, 1, 1});
  CHECK(GridWorld(listed).branching_factor() == 26);

  std::ostringstream os;
  write_gridmap(os, GridWorld(listed).config());
  const GridConfig again = parse(os.str());
  CHECK(GridWorld(again).fingerprint() == GridWorld(listed).fingerprint());
}

TEST_CASE("grid map: malformed inputs") {
  CHECK(code_of([] { parse("dims 3 3\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("rtplan-gridmap 1\ndims 3 x\ngoal 0 0 1 1\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("rtplan-gridmap 1\ndims 3 3\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("rtplan-gridmap 2\ndims 3 3\ngoal 0 0 1 1\n"); }) == ErrorCode::kVersionUnsupported);
  CHECK(code_of([] { parse("rtplan-gridmap 1\ndims 3 3\ngoal 0 0 1\n"); }) != ErrorCode::kUsage);
  CHECK(code_of([] { parse("rtplan-gridmap 1\ndims 3 3\ngoal 0 0 1 1\nraster\n...\n...\n"); }) ==
        ErrorCode::kInconsistentDims);
  CHECK(code_of([] { parse("rtplan-gridmap 1\ndims 3 3\ngoal 0 0 1 1\nblocked\n5 5\n"); }) ==
        ErrorCode::kInconsistentDims);
  CHECK(code_of([] { parse("rtplan-gridmap 1\ndims 3 3 3\ngoal 0 0 1 1 1 1\nraster\n...\n"); }) ==
        ErrorCode::kInconsistentDims);
}

TEST_CASE("grid fingerprint reacts to every configuration input") {
  const GridConfig base = fixtures::wall_box();
  const auto fp = GridWorld(base).fingerprint();
  GridConfig moved = base;
  moved.blocked.back() = {12, 12};
  CHECK(GridWorld(moved).fingerprint() != fp);
  GridConfig res = base;
  res.resolution = {0.02, 0.03};
  CHECK(GridWorld(res).fingerprint() != fp);
  GridConfig conn = base;
  conn.connectivity = Connectivity::kAxis;
  CHECK(GridWorld(conn).fingerprint() != fp);
  GridConfig w = base;
  w.weights = {1.0, 1.5};
  CHECK(GridWorld(w).fingerprint() != fp);
  GridConfig goal = base;
  goal.goal = {Box{{2, 2}, {21, 20}}};
  CHECK(GridWorld(goal).fingerprint() != fp);
  CHECK(GridWorld(base).fingerprint() == fp);
}

TEST_CASE("geometry primitives") {
  CHECK(point_segment_distance({0, 1}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(point_segment_distance({3, 0}, {-1, 0}, {1, 0}) == doctest::Approx(2.0));
  CHECK(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  const std::vector<Point2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(is_convex_polygon(square));
  CHECK(point_in_convex_polygon({0.5, 0.5}, square));
  CHECK(segment_hits_convex_polygon({-1, 0.5}, {2, 0.5}, square));
  CHECK_FALSE(segment_hits_convex_polygon({-1, 2}, {2, 2}, square));
  CHECK_FALSE(is_convex_polygon(std::vector<Point2>{{0, 0}, {2, 0}, {1, 0.5}, {2, 2}, {0, 2}}));
}

TEST_CASE("arm: obstacle-free zero state is valid and fully extended reach is the link sum") {
  ArmScene s = fixtures::arm_basic();
  s.circles.clear();
  const PlanarArm arm(s);
  CHECK(arm.is_valid(DiscreteState::zeros(3)));
  const auto pts = arm.forward_kinematics(DiscreteState{4, 0, 0});
  const double reach = std::hypot(pts.back().x - s.base.x, pts.back().y - s.base.y);
  CHECK(std::abs(reach - (1.0 + 0.8 + 0.6)) <= 1e-9);
}

TEST_CASE("arm: second link crossing a circle is invalid") {
  // Zero state: second link spans (1,0)-(2,0); the centre sits 0.1 from it.
  const PlanarArm hit(two_link(1.5, 0.1, 0.2));
  CHECK(seg_dist(1.5, 0.1, 1.0, 0.0, 2.0, 0.0) == doctest::Approx(0.1));
  CHECK_FALSE(hit.is_valid({0, 0}));
  const PlanarArm miss(two_link(1.5, 0.3, 0.2));
  CHECK(hit.fingerprint() != miss.fingerprint());
  CHECK(miss.is_valid({0, 0}));

  // Random configurations against an independent FK + distance computation.
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const DiscreteState q = rng.uniform_in(hit.joint_limits());
    const double a0 = q[0] * 10.0 * std::numbers::pi / 180.0;
    const double a1 = a0 + q[1] * 10.0 * std::numbers::pi / 180.0;
    const double x1 = std::cos(a0), y1 = std::sin(a0);
    const double x2 = x1 + std::cos(a1), y2 = y1 + std::sin(a1);
    const bool collide = seg_dist(1.5, 0.1, 0, 0, x1, y1) <= 0.2 || seg_dist(1.5, 0.1, x1, y1, x2, y2) <= 0.2;
    CHECK(hit.is_valid(q) == !collide);
  }
}

TEST_CASE("arm: sweep catches a graze between valid endpoints") {
  ArmScene s;
  s.links = {1.0};
  s.joints = {JointSpec{20.0, -180.0, 180.0}};
  const double mid = 10.0 * std::numbers::pi / 180.0;
  s.circles = {{{0.9 * std::cos(mid), 0.9 * std::sin(mid)}, 0.05}};
  s.goal = {{DiscreteState{-2}, DiscreteState{2}}};
  const PlanarArm arm(s);
  CHECK(arm.is_valid({0}));
  CHECK(arm.is_valid({1}));
  CHECK_FALSE(arm.is_edge_valid({0}, {1}));
  CHECK_FALSE(arm.is_edge_valid({1}, {0}));

  bool dense_hit = false;
  for (int i = 0; i <= 100; ++i) {
    const double a = (20.0 * i / 100.0) * std::numbers::pi / 180.0;
    dense_hit = dense_hit || seg_dist(s.circles[0].center.x, s.circles[0].center.y, 0, 0, std::cos(a), std::sin(a)) <= 0.05;
  }
  CHECK(dense_hit);
}

TEST_CASE("arm: edge validity is symmetric and joints do not wrap") {
  const PlanarArm arm(fixtures::arm_basic());
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    const DiscreteState a = rng.uniform_in(arm.joint_limits());
    for (const auto& b : arm.successors(a)) CHECK(arm.is_edge_valid(a, b) == arm.is_edge_valid(b, a));
  }
  CHECK(arm.joint_limits().upper[0] == 17);
  CHECK_FALSE(arm.is_valid({18, 0, 0}));
}

TEST_CASE("arm scene file round trip and errors") {
  const ArmScene s = fixtures::arm_basic();
  std::ostringstream os;
  write_arm_scene(os, s);
  std::istringstream is(os.str());
  const ArmScene back = parse_arm_scene(is);
  CHECK(PlanarArm(back).fingerprint() == PlanarArm(s).fingerprint());

  std::istringstream bad("{\"format\": \"rtplan-armscene\", \"version\": 1}");
  CHECK(code_of([&] { parse_arm_scene(bad); }) == ErrorCode::kParse);
  std::istringstream v2("{\"format\": \"rtplan-armscene\", \"version\": 2}");
  CHECK(code_of([&] { parse_arm_scene(v2); }) == ErrorCode::kVersionUnsupported);
  std::istringstream junk("{not json");
  CHECK(code_of([&] { parse_arm_scene(junk); }) == ErrorCode::kParse);
}

TEST_CASE("shipped data files load through the generic loader") {
  const std::string dir = RTPLAN_DATA_DIR;
  for (const char* name : {"empty_box.map", "wall_box.map", "corridor.map", "two_boxes.map", "blocked_goal.map",
                           "arm_basic.json"}) {
    const LoadedDomain d = load_domain(dir + "/" + name);
    REQUIRE(d.domain != nullptr);
    REQUIRE(d.start.has_value());
    CHECK(d.domain->is_valid(*d.start));
  }
  CHECK(load_domain(dir + "/arm_basic.json").domain->kind() == "arm");
  CHECK(load_domain(dir + "/corridor.map").domain->fingerprint() == GridWorld(fixtures::corridor()).fingerprint());
  CHECK(code_of([&] { load_domain(dir + "/missing.map"); }) == ErrorCode::kIo);
}

TEST_CASE("random fixtures: density range and start connectivity") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GridConfig c = fixtures::random_grid(seed);
    const GridWorld g(c);
    REQUIRE(c.start.has_value());
    const auto dist = oracle::dijkstra(g, *c.start);
    std::size_t free = 0;
    for_each_in_box(DiscreteState{0, 0}, DiscreteState{49, 49}, [&](const DiscreteState& s) {
      if (!g.is_valid(s)) return;
      ++free;
      CHECK(dist.count(s) == 1);
    });
    CHECK(free <= 2500 * 85 / 100);
    CHECK(g.goal_region().size() == 900);
    CHECK_FALSE(g.in_goal(*c.start));
  }
  const GridConfig a = fixtures::random_grid(3);
  const GridConfig b = fixtures::random_grid(3);
  CHECK(GridWorld(a).fingerprint() == GridWorld(b).fingerprint());

  const ArmScene arm = fixtures::random_arm(4);
  const PlanarArm d(arm);
  REQUIRE(arm.start.has_value());
  const auto dist = oracle::dijkstra(d, *arm.start);
  for (const auto& s : oracle::valid_goal_states(d)) CHECK(dist.count(s) == 1);
}
