#include "rtplan/domains/planar_arm.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>

#include "json.hpp"

#include "rtplan/error.hpp"
#include "rtplan/fingerprint.hpp"

namespace rtplan {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void validate_scene(const ArmScene& s) {
  const std::size_t n = s.links.size();
  if (n == 0 || n > kMaxDimension) throw Error(ErrorCode::kInconsistentDims, "arm needs 1..8 links");
  if (s.joints.size() != n) throw Error(ErrorCode::kInconsistentDims, "one joint spec per link required");
  for (double l : s.links) {
    if (!(l > 0.0)) throw Error(ErrorCode::kInvalidArgument, "link lengths must be positive");
  }
  for (const auto& j : s.joints) {
    if (!(j.resolution_deg > 0.0)) throw Error(ErrorCode::kInvalidArgument, "joint resolution must be positive");
    if (j.min_deg > j.max_deg) throw Error(ErrorCode::kInvalidArgument, "joint min exceeds max");
  }
  for (const auto& c : s.circles) {
    if (!(c.radius >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "circle radius must be non-negative");
  }
  for (const auto& p : s.polygons) {
    if (!is_convex_polygon(p.vertices)) throw Error(ErrorCode::kInvalidArgument, "polygon obstacles must be convex");
  }
  if (s.sweep_points < 0) throw Error(ErrorCode::kInvalidArgument, "sweep_points must be >= 0");
  if (s.start && s.start->size() != n) throw Error(ErrorCode::kInconsistentDims, "start dimension differs from link count");
}

LatticeSpec make_spec(const ArmScene& s) {
  validate_scene(s);
  LatticeSpec spec;
  spec.dimension = s.links.size();
  spec.primitives = s.connectivity == Connectivity::kAxis ? axis_primitives(spec.dimension)
                                                          : full_primitives(spec.dimension);
  spec.weights = s.weights;
  for (const auto& j : s.joints) spec.resolution.push_back(j.resolution_deg);
  spec.goal = GoalRegion(s.goal);
  return spec;
}

Box step_limits(const ArmScene& s) {
  const std::size_t n = s.joints.size();
  Box b{DiscreteState::zeros(n), DiscreteState::zeros(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const auto& j = s.joints[k];
    b.lower[k] = static_cast<std::int32_t>(std::ceil(j.min_deg / j.resolution_deg - 1e-9));
    b.upper[k] = static_cast<std::int32_t>(std::floor(j.max_deg / j.resolution_deg + 1e-9));
  }
  return b;
}

}  // namespace

PlanarArm::PlanarArm(ArmScene scene)
    : LatticeDomain(make_spec(scene)), scene_(std::move(scene)), limits_(step_limits(scene_)) {
  Fnv1a h;
  h.add_string("arm");
  fingerprint_lattice(h);
  h.add_u64(scene_.links.size());
  for (double l : scene_.links) h.add_double(l);
  h.add_double(scene_.base.x);
  h.add_double(scene_.base.y);
  for (const auto& j : scene_.joints) {
    h.add_double(j.resolution_deg);
    h.add_double(j.min_deg);
    h.add_double(j.max_deg);
  }
  h.add_u64(scene_.circles.size());
  for (const auto& c : scene_.circles) {
    h.add_double(c.center.x);
    h.add_double(c.center.y);
    h.add_double(c.radius);
  }
  h.add_u64(scene_.polygons.size());
  for (const auto& p : scene_.polygons) {
    h.add_u64(p.vertices.size());
    for (const auto& v : p.vertices) {
      h.add_double(v.x);
      h.add_double(v.y);
    }
  }
  h.add_i64(scene_.sweep_points);
  fingerprint_ = h.value();
}

std::vector<double> PlanarArm::joint_angles(const DiscreteState& s) const {
  check_dimension(s);
  std::vector<double> out(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) out[k] = s[k] * scene_.joints[k].resolution_deg * kDegToRad;
  return out;
}

std::vector<Point2> PlanarArm::forward_kinematics(std::span<const double> angles) const {
  std::vector<Point2> pts;
  pts.reserve(angles.size() + 1);
  pts.push_back(scene_.base);
  double heading = 0.0;
  Point2 p = scene_.base;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    heading += angles[k];
    p = Point2{p.x + scene_.links[k] * std::cos(heading), p.y + scene_.links[k] * std::sin(heading)};
    pts.push_back(p);
  }
  return pts;
}

std::vector<Point2> PlanarArm::forward_kinematics(const DiscreteState& s) const {
  return forward_kinematics(joint_angles(s));
}

bool PlanarArm::collides(std::span<const double> angles) const {
  const auto pts = forward_kinematics(angles);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const Point2 a = pts[k];
    const Point2 b = pts[k + 1];
    for (const auto& c : scene_.circles) {
      if (point_segment_distance(c.center, a, b) <= c.radius) return true;
    }
    for (const auto& poly : scene_.polygons) {
      if (segment_hits_convex_polygon(a, b, poly.vertices)) return true;
    }
  }
  return false;
}

bool PlanarArm::is_valid(const DiscreteState& s) const {
  check_dimension(s);
  instrumentation::count_validity_check();
  if (!within_limits(s)) return false;
  return !collides(joint_angles(s));
}

bool PlanarArm::is_edge_valid(const DiscreteState& a, const DiscreteState& b) const {
  check_dimension(a);
  check_dimension(b);
  if (!is_neighbor(a, b)) {
    throw Error(ErrorCode::kNotNeighbors, a.to_string() + " and " + b.to_string() + " are not neighbours");
  }
  if (!is_valid(a) || !is_valid(b)) return false;
  // Interpolate from the lexicographically smaller endpoint so the check is
  // exactly symmetric.
  const DiscreteState& lo = a < b ? a : b;
  const DiscreteState& hi = a < b ? b : a;
  const auto qa = joint_angles(lo);
  const auto qb = joint_angles(hi);
  std::vector<double> q(qa.size());
  const int m = scene_.sweep_points;
  for (int i = 1; i <= m; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(m + 1);
    for (std::size_t k = 0; k < q.size(); ++k) q[k] = qa[k] + t * (qb[k] - qa[k]);
    instrumentation::count_validity_check();
    if (collides(q)) return false;
  }
  return true;
}

// --- scene files -----------------------------------------------------------

namespace {

using nlohmann::json;

Point2 point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kParse, "expected [x, y]");
  return Point2{j[0].get<double>(), j[1].get<double>()};
}

DiscreteState state_from(const json& j) {
  std::vector<std::int32_t> v = j.get<std::vector<std::int32_t>>();
  return DiscreteState(std::span<const std::int32_t>(v));
}

json state_to(const DiscreteState& s) { return json(std::vector<std::int32_t>(s.begin(), s.end())); }

}  // namespace

ArmScene parse_arm_scene(std::istream& is) {
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("arm scene is not valid JSON: ") + e.what());
  }
  try {
    if (doc.value("format", "") != "rtplan-armscene") {
      throw Error(ErrorCode::kParse, "missing \"format\": \"rtplan-armscene\"");
    }
    if (doc.value("version", 0) != 1) {
      throw Error(ErrorCode::kVersionUnsupported, "arm scene version " + doc.value("version", json(0)).dump());
    }
    ArmScene s;
    s.links = doc.at("links").get<std::vector<double>>();
    s.base = doc.contains("base") ? point_from(doc["base"]) : Point2{};
    for (const auto& j : doc.at("joints")) {
      s.joints.push_back(JointSpec{j.at("resolution_deg").get<double>(), j.at("min_deg").get<double>(),
                                   j.at("max_deg").get<double>()});
    }
    for (const auto& o : doc.value("obstacles", json::array())) {
      const std::string type = o.at("type").get<std::string>();
      if (type == "circle") {
        s.circles.push_back(CircleObstacle{point_from(o.at("center")), o.at("radius").get<double>()});
      } else if (type == "polygon") {
        PolygonObstacle p;
        for (const auto& v : o.at("vertices")) p.vertices.push_back(point_from(v));
        s.polygons.push_back(std::move(p));
      } else {
        throw Error(ErrorCode::kParse, "unknown obstacle type '" + type + "'");
      }
    }
    s.sweep_points = doc.value("sweep_points", 4);
    const std::string conn = doc.value("connectivity", "axis");
    if (conn == "axis") {
      s.connectivity = Connectivity::kAxis;
    } else if (conn == "full") {
      s.connectivity = Connectivity::kFull;
    } else {
      throw Error(ErrorCode::kParse, "unknown connectivity '" + conn + "'");
    }
    if (doc.contains("weights")) s.weights = doc["weights"].get<std::vector<double>>();
    for (const auto& g : doc.at("goal")) s.goal.push_back(Box{state_from(g.at("lower")), state_from(g.at("upper"))});
    if (doc.contains("start")) s.start = state_from(doc["start"]);
    for (const Box& b : s.goal) {
      if (b.lower.size() != s.links.size() || b.upper.size() != s.links.size()) {
        throw Error(ErrorCode::kInconsistentDims, "goal box dimension differs from link count");
      }
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed arm scene: ") + e.what());
  }
}

ArmScene load_arm_scene_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open arm scene " + path.string());
  return parse_arm_scene(in);
}

void write_arm_scene(std::ostream& os, const ArmScene& s) {
  json doc;
  doc["format"] = "rtplan-armscene";
  doc["version"] = 1;
  doc["links"] = s.links;
  doc["base"] = {s.base.x, s.base.y};
  doc["joints"] = json::array();
  for (const auto& j : s.joints) {
    doc["joints"].push_back({{"resolution_deg", j.resolution_deg}, {"min_deg", j.min_deg}, {"max_deg", j.max_deg}});
  }
  doc["obstacles"] = json::array();
  for (const auto& c : s.circles) {
    doc["obstacles"].push_back({{"type", "circle"}, {"center", {c.center.x, c.center.y}}, {"radius", c.radius}});
  }
  for (const auto& p : s.polygons) {
    json verts = json::array();
    for (const auto& v : p.vertices) verts.push_back({v.x, v.y});
    doc["obstacles"].push_back({{"type", "polygon"}, {"vertices", verts}});
  }
  doc["sweep_points"] = s.sweep_points;
  doc["connectivity"] = s.connectivity == Connectivity::kAxis ? "axis" : "full";
  if (!s.weights.empty()) doc["weights"] = s.weights;
  doc["goal"] = json::array();
  for (const auto& b : s.goal) doc["goal"].push_back({{"lower", state_to(b.lower)}, {"upper", state_to(b.upper)}});
  if (s.start) doc["start"] = state_to(*s.start);
  os << doc.dump(2) << "\n";
}

}  // namespace rtplan
