#include <algorithm>
#include <functional>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "rtplan/domains/grid_world.hpp"
#include "rtplan/domains/planar_arm.hpp"
#include "rtplan/error.hpp"
#include "rtplan/fixtures.hpp"
#include "rtplan/planners/astar.hpp"
#include "rtplan/query.hpp"

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

}  // namespace

TEST_CASE("greedy path examples") {
  const GridWorld g(fixtures::empty_box(9));
  SUBCASE("diagonal walk") {
    QueryStats st;
    const PlannedPath p = find_greedy_path({0, 0}, {3, 3}, g, 10, &st);
    REQUIRE(p.size() == 4);
    CHECK(p.front() == DiscreteState{0, 0});
    CHECK(p.back() == DiscreteState{3, 3});
    CHECK(st.greedy_expansions == 3);
    CHECK(st.predecessor_evaluations == 24);
  }
  SUBCASE("goal equals attractor") {
    const PlannedPath p = find_greedy_path({2, 2}, {2, 2}, g, 0);
    CHECK(p.size() == 1);
    CHECK(p.cost == 0.0);
  }
  SUBCASE("budget exhausted") {
    CHECK(code_of([&] { find_greedy_path({0, 0}, {5, 5}, g, 4); }) == ErrorCode::kStepBudgetExceeded);
    CHECK_NOTHROW(find_greedy_path({0, 0}, {5, 5}, g, 5));
  }
}

TEST_CASE("covering subregion scan") {
  const GridWorld g(fixtures::empty_box(9));
  PreprocessArtifact a;
  a.domain_fingerprint = g.fingerprint();
  a.subregions = {{{0, 0}, 3.0, 2, 0}, {{8, 8}, 2.0, 1, 1}};
  QueryStats st;
  CHECK(find_covering_subregion({1, 1}, a, g, &st) == 0);
  CHECK(st.subregion_scans == 1);
  st = {};
  CHECK(find_covering_subregion({7, 8}, a, g, &st) == 1);
  CHECK(st.subregion_scans == 2);
  CHECK(code_of([&] { find_covering_subregion({4, 4}, a, g); }) == ErrorCode::kNotCovered);
  CHECK(code_of([&] { find_covering_subregion({9, 9}, a, g); }) == ErrorCode::kNotCovered);
  CHECK(code_of([&] { find_covering_subregion({1, 1, 1}, a, g); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("queries on wall_box are valid, bounded and check-free") {
  const GridWorld g(fixtures::wall_box());
  const PreprocessArtifact a = preprocess_region(g, {0, 0}, AStarPlanner());
  const QueryEngine engine(a, g);
  for (const auto& goal : oracle::valid_goal_states(g)) {
    QueryStats st;
    const PlannedPath p = engine.query(goal, &st);
    REQUIRE(oracle::audit(g, p, {0, 0}, goal).empty());
    CHECK(st.collision_checks == 0);
    CHECK(st.ops() <= engine.ops_bound());
    CHECK(st.greedy_expansions <= a.subregions[st.subregion_index].depth);
  }
}

TEST_CASE("queries on the arm scene") {
  const PlanarArm arm(fixtures::arm_basic());
  const DiscreteState start = *fixtures::arm_basic().start;
  const PreprocessArtifact a = preprocess_region(arm, start, AStarPlanner());
  REQUIRE(a.complete());
  const auto valid = oracle::valid_goal_states(arm);
  const QueryEngine engine(a, arm);
  for (std::size_t i = 0; i < valid.size(); i += 7) {
    QueryStats st;
    const PlannedPath p = engine.query(valid[i], &st);
    CHECK(oracle::audit(arm, p, start, valid[i]).empty());
    CHECK(st.collision_checks == 0);
  }
}

TEST_CASE("fingerprint mismatch is rejected once, before any query") {
  const GridWorld g(fixtures::wall_box());
  PreprocessArtifact a = preprocess_region(g, {0, 0}, AStarPlanner());
  GridConfig other = fixtures::wall_box();
  other.blocked.push_back({0, 23});
  const GridWorld g2(other);
  CHECK(code_of([&] { QueryEngine(a, g2); }) == ErrorCode::kFingerprintMismatch);
  CHECK(code_of([&] { compute_path({5, 5}, a, g2); }) == ErrorCode::kFingerprintMismatch);
}

TEST_CASE("worst-case profile matches a serial rerun") {
  const GridWorld g(fixtures::corridor());
  const PreprocessArtifact a = preprocess_region(g, *fixtures::corridor().start, AStarPlanner());
  const WorstCaseProfile par = profile_worst_case(a, g, Exec::kParallel);
  const WorstCaseProfile ser = profile_worst_case(a, g, Exec::kSerial);
  CHECK(par.goals == ser.goals);
  CHECK(par.max_ops == ser.max_ops);
  CHECK(par.argmax_goal == ser.argmax_goal);
  CHECK(par.work_bound_violations == 0);
  CHECK(par.collision_checks == 0);
  CHECK(par.max_ops <= par.ops_bound);
  QueryStats st;
  compute_path(par.argmax_goal, a, g, &st);
  CHECK(st.ops() == par.max_ops);
}

TEST_CASE("coverage audit") {
  const GridWorld g(fixtures::wall_box());
  PreprocessArtifact a = preprocess_region(g, {0, 0}, AStarPlanner());
  CHECK(audit_coverage(a, g, Exec::kParallel).ok());
  a.subregions.pop_back();
  const CoverageAudit par = audit_coverage(a, g, Exec::kParallel);
  const CoverageAudit ser = audit_coverage(a, g, Exec::kSerial);
  CHECK(par.uncovered == ser.uncovered);
  CHECK(par.uncovered == oracle::uncovered(g, a.subregions));
}

TEST_CASE("query stats json") {
  QueryStats st;
  st.subregion_scans = 3;
  st.predecessor_evaluations = 16;
  std::ostringstream os;
  write_query_stats(os, st);
  const auto j = nlohmann::json::parse(os.str());
  CHECK(j.at("subregion_scans") == 3);
  CHECK(j.at("ops") == 19);
  CHECK(j.at("collision_checks") == 0);
}
