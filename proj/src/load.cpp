#include "rtplan/domains/load.hpp"

#include <fstream>

#include "rtplan/domains/grid_world.hpp"
#include "rtplan/domains/planar_arm.hpp"
#include "rtplan/error.hpp"

namespace rtplan {

LoadedDomain load_domain(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  char first = 0;
  is >> std::ws;
  first = static_cast<char>(is.peek());
  LoadedDomain out;
  if (first == '{') {
    ArmScene scene = parse_arm_scene(is);
    out.start = scene.start;
    out.domain = std::make_unique<PlanarArm>(std::move(scene));
  } else {
    GridConfig config = parse_gridmap(is);
    out.start = config.start;
    out.domain = std::make_unique<GridWorld>(std::move(config));
  }
  return out;
}

}  // namespace rtplan
