#include "rtplan/domains/grid_world.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rtplan/error.hpp"
#include "rtplan/fingerprint.hpp"

namespace rtplan {
namespace {

constexpr std::size_t kMaxGridCells = std::size_t{1} << 28;

LatticeSpec make_spec(const GridConfig& c) {
  LatticeSpec spec;
  spec.dimension = c.extents.size();
  spec.primitives = c.connectivity == Connectivity::kAxis ? axis_primitives(spec.dimension)
                                                          : full_primitives(spec.dimension);
  spec.weights = c.weights;
  spec.resolution = c.resolution;
  spec.goal = GoalRegion(c.goal);
  return spec;
}

GridConfig normalised(GridConfig c) {
  if (c.extents.empty() || c.extents.size() > kMaxDimension) {
    throw Error(ErrorCode::kInconsistentDims, "grid needs between 1 and 8 dimensions");
  }
  for (auto e : c.extents) {
    if (e <= 0) throw Error(ErrorCode::kInconsistentDims, "grid extents must be positive");
  }
  for (const auto& cell : c.blocked) {
    if (cell.size() != c.extents.size()) {
      throw Error(ErrorCode::kInconsistentDims, "blocked cell " + cell.to_string() +
                                                    " has the wrong dimension");
    }
    for (std::size_t k = 0; k < cell.size(); ++k) {
      if (cell[k] < 0 || cell[k] >= c.extents[k]) {
        throw Error(ErrorCode::kInconsistentDims,
                    "blocked cell " + cell.to_string() + " lies outside the grid");
      }
    }
  }
  std::sort(c.blocked.begin(), c.blocked.end());
  c.blocked.erase(std::unique(c.blocked.begin(), c.blocked.end()), c.blocked.end());
  if (c.start && c.start->size() != c.extents.size()) {
    throw Error(ErrorCode::kInconsistentDims, "start state has the wrong dimension");
  }
  return c;
}

}  // namespace

GridWorld::GridWorld(GridConfig config)
    : LatticeDomain(make_spec(normalised(config))), config_(normalised(std::move(config))) {
  const std::size_t n = config_.extents.size();
  strides_.assign(n, 1);
  std::size_t cells = 1;
  for (std::size_t k = n; k-- > 0;) {
    strides_[k] = cells;
    if (static_cast<std::size_t>(config_.extents[k]) > kMaxGridCells / cells) {
      throw Error(ErrorCode::kInconsistentDims, "grid too large");
    }
    cells *= static_cast<std::size_t>(config_.extents[k]);
  }
  occupied_.assign(cells, 0);
  for (const auto& cell : config_.blocked) occupied_[cell_index(cell)] = 1;

  Fnv1a hasher;
  hasher.add_string("grid");
  fingerprint_lattice(hasher);
  for (auto e : config_.extents) hasher.add_i64(e);
  hasher.add_u64(config_.blocked.size());
  for (const auto& cell : config_.blocked) {
    for (auto c : cell) hasher.add_i64(c);
  }
  fingerprint_ = hasher.value();
}

bool GridWorld::in_bounds(const DiscreteState& s) const noexcept {
  if (s.size() != config_.extents.size()) return false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] < 0 || s[k] >= config_.extents[k]) return false;
  }
  return true;
}

std::size_t GridWorld::cell_index(const DiscreteState& s) const noexcept {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < strides_.size(); ++k) idx += static_cast<std::size_t>(s[k]) * strides_[k];
  return idx;
}

bool GridWorld::is_blocked(const DiscreteState& s) const noexcept {
  return !in_bounds(s) || occupied_[cell_index(s)] != 0;
}

bool GridWorld::is_valid(const DiscreteState& s) const {
  check_dimension(s);
  instrumentation::count_validity_check();
  return !is_blocked(s);
}

bool GridWorld::is_edge_valid(const DiscreteState& a, const DiscreteState& b) const {
  check_dimension(a);
  check_dimension(b);
  if (!is_neighbor(a, b)) {
    throw Error(ErrorCode::kNotNeighbors, a.to_string() + " and " + b.to_string() + " are not neighbours");
  }
  return is_valid(a) && is_valid(b);
}

Box GridWorld::sampling_bounds() const {
  Box b{DiscreteState::zeros(config_.extents.size()), DiscreteState::zeros(config_.extents.size())};
  for (std::size_t k = 0; k < config_.extents.size(); ++k) b.upper[k] = config_.extents[k] - 1;
  return b;
}

// --- map files -------------------------------------------------------------

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::kParse, "map line " + std::to_string(line_no) + ": " + what);
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  std::string s = pos == std::string::npos ? line : line.substr(0, pos);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

template <class T>
std::vector<T> read_numbers(std::istringstream& ss, std::size_t line_no) {
  std::vector<T> out;
  std::string tok;
  while (ss >> tok) {
    std::istringstream ts(tok);
    T v{};
    if (!(ts >> v) || !ts.eof()) parse_fail(line_no, "expected a number, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

DiscreteState to_state(const std::vector<std::int32_t>& v) {
  return DiscreteState(std::span<const std::int32_t>(v));
}

}  // namespace

GridConfig parse_gridmap(std::istream& is) {
  GridConfig c;
  std::string raw;
  std::size_t line_no = 0;
  bool have_magic = false;
  bool have_connectivity = false;
  enum class Body { kNone, kRaster, kBlocked } body = Body::kNone;
  std::vector<std::string> raster_rows;

  while (std::getline(is, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (body == Body::kRaster) {
      if (raw.empty()) continue;
      raster_rows.push_back(raw);
      continue;
    }
    const std::string line = strip_comment(raw);
    if (line.empty()) continue;
    std::istringstream ss(line);
    if (body == Body::kBlocked) {
      c.blocked.push_back(to_state(read_numbers<std::int32_t>(ss, line_no)));
      continue;
    }
    std::string key;
    ss >> key;
    if (!have_magic) {
      int version = 0;
      if (key != "rtplan-gridmap") parse_fail(line_no, "missing 'rtplan-gridmap' header");
      if (!(ss >> version)) parse_fail(line_no, "missing map version");
      if (version != 1) {
        throw Error(ErrorCode::kVersionUnsupported, "map version " + std::to_string(version));
      }
      have_magic = true;
    } else if (key == "dims") {
      c.extents = read_numbers<std::int32_t>(ss, line_no);
      if (c.extents.empty()) parse_fail(line_no, "dims needs at least one extent");
    } else if (key == "connectivity") {
      std::string v;
      ss >> v;
      if (v == "axis" || v == "4") {
        c.connectivity = Connectivity::kAxis;
      } else if (v == "full" || v == "8") {
        c.connectivity = Connectivity::kFull;
      } else {
        parse_fail(line_no, "unknown connectivity '" + v + "'");
      }
      have_connectivity = true;
    } else if (key == "weights") {
      c.weights = read_numbers<double>(ss, line_no);
    } else if (key == "resolution") {
      c.resolution = read_numbers<double>(ss, line_no);
    } else if (key == "goal") {
      auto v = read_numbers<std::int32_t>(ss, line_no);
      if (v.empty() || v.size() % 2 != 0) parse_fail(line_no, "goal needs lower and upper corners");
      const std::size_t n = v.size() / 2;
      std::vector<std::int32_t> lo(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
      std::vector<std::int32_t> hi(v.begin() + static_cast<std::ptrdiff_t>(n), v.end());
      c.goal.push_back(Box{to_state(lo), to_state(hi)});
    } else if (key == "start") {
      c.start = to_state(read_numbers<std::int32_t>(ss, line_no));
    } else if (key == "raster") {
      body = Body::kRaster;
    } else if (key == "blocked") {
      body = Body::kBlocked;
    } else {
      parse_fail(line_no, "unknown key '" + key + "'");
    }
  }
  if (!have_magic) throw Error(ErrorCode::kParse, "empty map file");
  if (c.extents.empty()) throw Error(ErrorCode::kParse, "map is missing 'dims'");
  if (c.goal.empty()) throw Error(ErrorCode::kParse, "map is missing 'goal'");
  if (!have_connectivity) c.connectivity = Connectivity::kAxis;
  const std::size_t n = c.extents.size();
  for (const Box& b : c.goal) {
    if (b.lower.size() != n) throw Error(ErrorCode::kInconsistentDims, "goal box dimension differs from dims");
  }
  if (!c.weights.empty() && c.weights.size() != n) {
    throw Error(ErrorCode::kInconsistentDims, "weights length differs from dims");
  }
  if (!c.resolution.empty() && c.resolution.size() != n) {
    throw Error(ErrorCode::kInconsistentDims, "resolution length differs from dims");
  }
  if (c.start && c.start->size() != n) throw Error(ErrorCode::kInconsistentDims, "start dimension differs from dims");
  if (body == Body::kRaster && !raster_rows.empty()) {
    if (n != 2) throw Error(ErrorCode::kInconsistentDims, "raster bodies are 2D only");
    if (raster_rows.size() != static_cast<std::size_t>(c.extents[1])) {
      throw Error(ErrorCode::kInconsistentDims, "raster has " + std::to_string(raster_rows.size()) +
                                                    " rows, dims say " + std::to_string(c.extents[1]));
    }
    for (std::size_t y = 0; y < raster_rows.size(); ++y) {
      const auto& row = raster_rows[y];
      if (row.size() != static_cast<std::size_t>(c.extents[0])) {
        throw Error(ErrorCode::kInconsistentDims, "raster row " + std::to_string(y) + " has length " +
                                                      std::to_string(row.size()));
      }
      for (std::size_t x = 0; x < row.size(); ++x) {
        if (row[x] == '#') {
          c.blocked.push_back(DiscreteState{static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
        } else if (row[x] != '.') {
          throw Error(ErrorCode::kParse, std::string("unexpected raster character '") + row[x] + "'");
        }
      }
    }
  }
  // Same checks the constructor applies, so bad files fail at load time.
  return normalised(std::move(c));
}

GridConfig load_gridmap_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open map file " + path.string());
  return parse_gridmap(in);
}

GridWorld load_gridmap(const std::filesystem::path& path) { return GridWorld(load_gridmap_file(path)); }

void write_gridmap(std::ostream& os, const GridConfig& config) {
  const std::size_t n = config.extents.size();
  os << "rtplan-gridmap 1\n";
  os << "dims";
  for (auto e : config.extents) os << ' ' << e;
  os << "\nconnectivity " << (config.connectivity == Connectivity::kAxis ? "axis" : "full") << "\n";
  if (!config.weights.empty()) {
    os << "weights";
    for (double w : config.weights) os << ' ' << w;
    os << "\n";
  }
  if (!config.resolution.empty()) {
    os << "resolution";
    for (double r : config.resolution) os << ' ' << r;
    os << "\n";
  }
  for (const Box& b : config.goal) {
    os << "goal";
    for (auto v : b.lower) os << ' ' << v;
    for (auto v : b.upper) os << ' ' << v;
    os << "\n";
  }
  if (config.start) {
    os << "start";
    for (auto v : *config.start) os << ' ' << v;
    os << "\n";
  }
  if (n == 2) {
    std::vector<std::string> rows(static_cast<std::size_t>(config.extents[1]),
                                  std::string(static_cast<std::size_t>(config.extents[0]), '.'));
    for (const auto& cell : config.blocked) {
      rows[static_cast<std::size_t>(cell[1])][static_cast<std::size_t>(cell[0])] = '#';
    }
    os << "raster\n";
    for (const auto& r : rows) os << r << "\n";
  } else {
    os << "blocked\n";
    for (const auto& cell : config.blocked) {
      for (std::size_t k = 0; k < cell.size(); ++k) os << (k ? " " : "") << cell[k];
      os << "\n";
    }
  }
}

}  // namespace rtplan
