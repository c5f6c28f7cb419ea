#ifndef RTPLAN_FIXTURES_HPP
#define RTPLAN_FIXTURES_HPP

#include <cstdint>

#include "rtplan/domains/grid_world.hpp"
#include "rtplan/domains/planar_arm.hpp"

namespace rtplan::fixtures {

struct RandomGridOptions {
  std::int32_t size = 50;
  double min_density = 0.15;
  double max_density = 0.25;
  std::int32_t goal_size = 30;
  Connectivity connectivity = Connectivity::kFull;
  std::int32_t max_block = 5;  // side of the largest random obstacle rectangle
};

// Square grid cluttered with random rectangles, a centred goal box and a
// start outside it. Free cells not connected to the start are filled in, so
// every valid goal state has a path from the start. Density counts the
// rectangles only.
GridConfig random_grid(std::uint64_t seed, const RandomGridOptions& options = {});

struct RandomArmOptions {
  std::size_t links = 3;
  double resolution_deg = 10.0;
  double limit_deg = 170.0;
  std::int32_t goal_extent = 12;  // joint steps per axis
  std::size_t min_circles = 2;
  std::size_t max_circles = 4;
  int max_attempts = 200;
};

// Random 3-link style arm scene whose goal states are all either in
// collision or connected to the start.
ArmScene random_arm(std::uint64_t seed, const RandomArmOptions& options = {});

// Empty n x n grid whose goal box is the whole grid.
GridConfig empty_box(std::int32_t n = 9, Connectivity connectivity = Connectivity::kFull);

// 20 x 20 goal box with one 6 x 1 wall segment inside, start outside.
GridConfig wall_box();

// Start and goal rooms joined by a one-cell gap in a long wall.
GridConfig corridor();

// Goal region made of two disjoint boxes (breaks convexity).
GridConfig two_boxes();

// Grid whose goal box is entirely blocked.
GridConfig blocked_goal();

// Three-link arm with two circles near the workspace.
ArmScene arm_basic();

}  // namespace rtplan::fixtures

#endif  // RTPLAN_FIXTURES_HPP
