#ifndef RTPLAN_DOMAINS_GRID_WORLD_HPP
#define RTPLAN_DOMAINS_GRID_WORLD_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rtplan/lattice.hpp"

namespace rtplan {

enum class Connectivity {
  kAxis,  // 2n neighbours
  kFull,  // 3^n - 1 neighbours
};

struct GridConfig {
  std::vector<std::int32_t> extents;
  Connectivity connectivity = Connectivity::kAxis;
  std::vector<Box> goal;
  std::vector<double> weights;
  std::vector<double> resolution;
  std::vector<DiscreteState> blocked;
  std::optional<DiscreteState> start;
};

// n-dimensional occupancy grid. A state is valid iff it lies inside the grid
// and its cell is free; an edge is valid iff both endpoints are.
class GridWorld final : public LatticeDomain {
 public:
  explicit GridWorld(GridConfig config);

  bool is_valid(const DiscreteState& s) const override;
  bool is_edge_valid(const DiscreteState& a, const DiscreteState& b) const override;
  std::uint64_t fingerprint() const override { return fingerprint_; }
  std::string kind() const override { return "grid"; }
  Box sampling_bounds() const override;

  bool in_bounds(const DiscreteState& s) const noexcept;
  // Uninstrumented occupancy lookup; true for out-of-bounds cells.
  bool is_blocked(const DiscreteState& s) const noexcept;

  const std::vector<std::int32_t>& extents() const noexcept { return config_.extents; }
  Connectivity connectivity() const noexcept { return config_.connectivity; }
  // Normalised configuration: blocked cells sorted and de-duplicated.
  const GridConfig& config() const noexcept { return config_; }
  std::size_t obstacle_count() const noexcept { return config_.blocked.size(); }

 private:
  std::size_t cell_index(const DiscreteState& s) const noexcept;

  GridConfig config_;
  std::vector<std::uint8_t> occupied_;
  std::vector<std::size_t> strides_;
  std::uint64_t fingerprint_ = 0;
};

// Map file (versioned text):
//
//   rtplan-gridmap 1
//   dims 9 9
//   connectivity axis          # axis | full | 4 | 8
//   weights 1 1                # optional
//   resolution 0.02 0.02       # optional, documentation only
//   goal 0 0 8 8               # lower... upper...; repeat for a union
//   start 11 11                # optional
//   raster                     # 2D only: one row per y, '#' blocked, '.' free
//   .........
//
// or `blocked` followed by one cell per line. A missing or empty body means
// no obstacles.
GridConfig parse_gridmap(std::istream& is);
GridConfig load_gridmap_file(const std::filesystem::path& path);
GridWorld load_gridmap(const std::filesystem::path& path);
void write_gridmap(std::ostream& os, const GridConfig& config);

}  // namespace rtplan

#endif  // RTPLAN_DOMAINS_GRID_WORLD_HPP
