#ifndef RTPLAN_DOMAINS_PLANAR_ARM_HPP
#define RTPLAN_DOMAINS_PLANAR_ARM_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rtplan/domains/geometry.hpp"
#include "rtplan/domains/grid_world.hpp"
#include "rtplan/lattice.hpp"

namespace rtplan {

struct JointSpec {
  double resolution_deg = 10.0;
  double min_deg = -180.0;
  double max_deg = 180.0;

  friend bool operator==(const JointSpec&, const JointSpec&) = default;
};

struct CircleObstacle {
  Point2 center;
  double radius = 0.0;

  friend bool operator==(const CircleObstacle&, const CircleObstacle&) = default;
};

struct PolygonObstacle {
  std::vector<Point2> vertices;  // convex

  friend bool operator==(const PolygonObstacle&, const PolygonObstacle&) = default;
};

struct ArmScene {
  std::vector<double> links;  // metres
  Point2 base;
  std::vector<JointSpec> joints;
  std::vector<CircleObstacle> circles;
  std::vector<PolygonObstacle> polygons;
  // Interior interpolation points checked per lattice edge.
  int sweep_points = 4;
  Connectivity connectivity = Connectivity::kAxis;
  std::vector<double> weights;
  std::vector<Box> goal;  // in joint steps
  std::optional<DiscreteState> start;
};

// Planar serial arm over a joint-angle lattice. Joint k of state s sits at
// s[k] * resolution_k degrees relative to the previous link. Joints are hard
// limited (no wrap-around), which keeps the heuristic a metric.
class PlanarArm final : public LatticeDomain {
 public:
  explicit PlanarArm(ArmScene scene);

  bool is_valid(const DiscreteState& s) const override;
  bool is_edge_valid(const DiscreteState& a, const DiscreteState& b) const override;
  std::uint64_t fingerprint() const override { return fingerprint_; }
  std::string kind() const override { return "arm"; }
  Box sampling_bounds() const override { return limits_; }

  const ArmScene& scene() const noexcept { return scene_; }
  const Box& joint_limits() const noexcept { return limits_; }
  bool within_limits(const DiscreteState& s) const noexcept { return limits_.contains(s); }

  std::vector<double> joint_angles(const DiscreteState& s) const;  // radians
  // Base followed by the tip of every link.
  std::vector<Point2> forward_kinematics(std::span<const double> angles) const;
  std::vector<Point2> forward_kinematics(const DiscreteState& s) const;
  // Uninstrumented geometric test for a continuous configuration.
  bool collides(std::span<const double> angles) const;

 private:
  ArmScene scene_;
  Box limits_;
  std::uint64_t fingerprint_ = 0;
};

// Arm scene file: JSON with "format": "rtplan-armscene", "version": 1,
// "links", "base", "joints" [{resolution_deg, min_deg, max_deg}],
// "obstacles" [{"type":"circle","center","radius"} |
// {"type":"polygon","vertices"}], "goal" [{"lower","upper"}], and optional
// "connectivity", "weights", "sweep_points", "start".
ArmScene parse_arm_scene(std::istream& is);
ArmScene load_arm_scene_file(const std::filesystem::path& path);
void write_arm_scene(std::ostream& os, const ArmScene& scene);

}  // namespace rtplan

#endif  // RTPLAN_DOMAINS_PLANAR_ARM_HPP
