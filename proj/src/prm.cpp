#include "rtplan/planners/prm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <iterator>
#include <limits>
#include <numbers>
#include <ostream>
#include <queue>
#include <unordered_set>

#include "binary_io.hpp"
#include "rtplan/random.hpp"

namespace rtplan {
namespace {

constexpr char kRoadmapMagic[4] = {'R', 'T', 'P', 'R'};
constexpr std::uint32_t kRoadmapVersion = 1;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Indices of the k candidates closest to q, ordered by (h, index).
std::vector<std::size_t> k_nearest(const std::vector<DiscreteState>& vertices, const std::vector<std::size_t>& pool,
                                   const DiscreteState& q, std::size_t k, const LatticeDomain& domain,
                                   std::uint64_t* evaluations) {
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(pool.size());
  for (std::size_t i : pool) scored.emplace_back(domain.heuristic(vertices[i], q), i);
  if (evaluations != nullptr) *evaluations += pool.size();
  k = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k), scored.end());
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(scored[i].second);
  return out;
}

// Greedy lattice states from a to b with no checks, always steered from the
// smaller endpoint so an edge expands identically in both directions.
std::vector<DiscreteState> canonical_steer(const LatticeDomain& domain, const DiscreteState& a,
                                           const DiscreteState& b) {
  const bool flip = b < a;
  const DiscreteState& lo = flip ? b : a;
  const DiscreteState& hi = flip ? a : b;
  // Greedy descent strictly lowers h, so the step count is bounded by the
  // number of distinct h values; this cap only trips on broken heuristics.
  auto states = greedy_descent(domain, lo, hi, 1u << 22);
  if (flip) std::reverse(states.begin(), states.end());
  return states;
}

void dijkstra_from_start(Roadmap& rm) {
  const std::size_t n = rm.vertices.size();
  rm.cost_to_start.assign(n, kInf);
  rm.parent.assign(n, -1);
  if (n == 0) return;
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  rm.cost_to_start[0] = 0.0;
  open.emplace(0.0, 0);
  while (!open.empty()) {
    auto [d, u] = open.top();
    open.pop();
    if (d > rm.cost_to_start[u]) continue;
    for (const auto& e : rm.adjacency[u]) {
      const double nd = d + e.cost;
      if (nd < rm.cost_to_start[e.to]) {
        rm.cost_to_start[e.to] = nd;
        rm.parent[e.to] = static_cast<std::int64_t>(u);
        open.emplace(nd, e.to);
      }
    }
  }
}

DiscreteState sample_state(Rng& rng, const LatticeDomain& domain, const PrmOptions& options) {
  if (options.goal_bias > 0.0 && rng.unit() < options.goal_bias) {
    const auto& boxes = domain.goal_region().boxes();
    return rng.uniform_in(boxes[rng.uniform(boxes.size())]);
  }
  return rng.uniform_in(domain.sampling_bounds());
}

}  // namespace

std::size_t Roadmap::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& adj : adjacency) total += adj.size();
  return total / 2;
}

std::size_t prm_connection_k(std::size_t n, std::size_t dimension) {
  if (n <= 1 || dimension == 0) return 1;
  const double k = std::numbers::e * (1.0 + 1.0 / static_cast<double>(dimension)) * std::log(static_cast<double>(n));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(k)));
}

std::optional<std::vector<DiscreteState>> prm_local_path(const LatticeDomain& domain, const DiscreteState& a,
                                                         const DiscreteState& b) {
  auto states = canonical_steer(domain, a, b);
  if (states.empty()) return std::nullopt;
  if (!domain.is_valid(states.front())) return std::nullopt;
  for (std::size_t i = 1; i < states.size(); ++i) {
    if (!domain.is_edge_valid(states[i - 1], states[i])) return std::nullopt;
  }
  return states;
}

Roadmap prm_build(const LatticeDomain& domain, const DiscreteState& start, const PrmOptions& options) {
  domain.check_dimension(start);
  Roadmap rm;
  rm.domain_fingerprint = domain.fingerprint();
  if (options.max_vertices == 0 || !(options.max_seconds > 0.0) || !domain.is_valid(start)) return rm;

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

  Rng rng(options.seed);
  std::unordered_set<DiscreteState, DiscreteStateHash> present{start};
  rm.vertices.push_back(start);
  rm.adjacency.emplace_back();
  std::vector<std::size_t> all{0};

  // Without a wall-clock limit, stop after this many samples so an almost
  // fully blocked domain cannot spin forever.
  std::size_t sample_cap = std::numeric_limits<std::size_t>::max();
  if (!std::isfinite(options.max_seconds) && options.max_vertices < sample_cap / 2000) {
    sample_cap = 1000 * (options.max_vertices + 10);
  }

  while (rm.vertices.size() <= options.max_vertices && rm.samples_drawn < sample_cap) {
    if ((rm.samples_drawn & 15u) == 0 && elapsed() >= options.max_seconds) break;
    ++rm.samples_drawn;
    const DiscreteState q = sample_state(rng, domain, options);
    if (present.count(q) != 0 || !domain.is_valid(q)) continue;

    const std::size_t k = prm_connection_k(rm.vertices.size() + 1, domain.dimension());
    const auto near = k_nearest(rm.vertices, all, q, k, domain, nullptr);
    const std::size_t qi = rm.vertices.size();
    rm.vertices.push_back(q);
    rm.adjacency.emplace_back();
    all.push_back(qi);
    present.insert(q);
    for (std::size_t v : near) {
      auto local = prm_local_path(domain, q, rm.vertices[v]);
      if (!local) continue;
      const double c = path_cost(*local, domain);
      rm.adjacency[qi].push_back({static_cast<std::uint32_t>(v), c});
      rm.adjacency[v].push_back({static_cast<std::uint32_t>(qi), c});
    }
  }
  dijkstra_from_start(rm);
  return rm;
}

std::optional<PlannedPath> prm_query(const Roadmap& roadmap, const LatticeDomain& domain, const DiscreteState& goal,
                                     PrmQueryStats* stats) {
  domain.check_dimension(goal);
  PrmQueryStats local_stats;
  PrmQueryStats& st = stats != nullptr ? *stats : local_stats;
  st = {};
  if (roadmap.empty()) return std::nullopt;
  if (roadmap.domain_fingerprint != domain.fingerprint()) {
    throw Error(ErrorCode::kFingerprintMismatch, "roadmap was built for a different domain");
  }

  const std::uint64_t checks_before = instrumentation::validity_checks();
  std::optional<PlannedPath> result;
  [&] {
    if (!domain.is_valid(goal)) return;
    std::vector<std::size_t> pool;
    pool.reserve(roadmap.vertices.size());
    for (std::size_t i = 0; i < roadmap.vertices.size(); ++i) {
      if (std::isfinite(roadmap.cost_to_start[i])) pool.push_back(i);
    }
    const std::size_t k = prm_connection_k(roadmap.vertices.size(), domain.dimension());
    const auto near = k_nearest(roadmap.vertices, pool, goal, k, domain, &st.distance_evaluations);
    for (std::size_t v : near) {
      ++st.connection_attempts;
      auto local = prm_local_path(domain, roadmap.vertices[v], goal);
      if (!local) continue;
      // Stored roadmap route from the start to v; its edges were validated
      // during the build.
      std::vector<std::size_t> chain;
      for (std::int64_t u = static_cast<std::int64_t>(v); u != -1; u = roadmap.parent[static_cast<std::size_t>(u)]) {
        chain.push_back(static_cast<std::size_t>(u));
      }
      std::reverse(chain.begin(), chain.end());
      std::vector<DiscreteState> states{roadmap.vertices[chain.front()]};
      for (std::size_t i = 1; i < chain.size(); ++i) {
        auto seg = canonical_steer(domain, roadmap.vertices[chain[i - 1]], roadmap.vertices[chain[i]]);
        states.insert(states.end(), std::next(seg.begin()), seg.end());
      }
      states.insert(states.end(), std::next(local->begin()), local->end());
      result = make_path(std::move(states), domain);
      return;
    }
  }();
  st.validity_checks = instrumentation::validity_checks() - checks_before;
  return result;
}

namespace {

detail::ByteWriter encode_roadmap(const Roadmap& rm) {
  detail::ByteWriter w;
  w.raw(kRoadmapMagic, 4);
  w.u32(kRoadmapVersion);
  w.u64(rm.domain_fingerprint);
  const std::size_t dim = rm.vertices.empty() ? 0 : rm.vertices.front().size();
  w.u32(static_cast<std::uint32_t>(dim));
  w.u64(rm.samples_drawn);
  w.u32(static_cast<std::uint32_t>(rm.vertices.size()));
  for (std::size_t i = 0; i < rm.vertices.size(); ++i) {
    w.state(rm.vertices[i]);
    w.f64(rm.cost_to_start[i]);
    w.u64(static_cast<std::uint64_t>(rm.parent[i]));
    w.u32(static_cast<std::uint32_t>(rm.adjacency[i].size()));
    for (const auto& e : rm.adjacency[i]) {
      w.u32(e.to);
      w.f64(e.cost);
    }
  }
  Fnv1a h;
  h.add_bytes(w.bytes());
  w.u64(h.value());
  return w;
}

}  // namespace

void save_roadmap(std::ostream& os, const Roadmap& roadmap) {
  const auto w = encode_roadmap(roadmap);
  os.write(reinterpret_cast<const char*>(w.bytes().data()), static_cast<std::streamsize>(w.bytes().size()));
  if (!os) throw Error(ErrorCode::kIo, "failed to write roadmap");
}

std::size_t roadmap_bytes(const Roadmap& roadmap) { return encode_roadmap(roadmap).bytes().size(); }

Roadmap load_roadmap(std::istream& is, const LatticeDomain& domain) {
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (bytes.size() < 4 + 4 + 8 || !std::equal(kRoadmapMagic, kRoadmapMagic + 4, bytes.begin())) {
    throw Error(ErrorCode::kParse, "not a roadmap file");
  }
  const std::size_t body = bytes.size() - 8;
  detail::ByteReader tail(bytes.data() + body, 8);
  Fnv1a h;
  h.add_bytes({bytes.data(), body});
  if (tail.u64() != h.value()) throw Error(ErrorCode::kChecksumMismatch, "roadmap checksum mismatch");

  detail::ByteReader r(bytes.data(), body);
  r.raw(4);
  if (r.u32() != kRoadmapVersion) throw Error(ErrorCode::kVersionUnsupported, "unsupported roadmap version");
  Roadmap rm;
  rm.domain_fingerprint = r.u64();
  if (rm.domain_fingerprint != domain.fingerprint()) {
    throw Error(ErrorCode::kFingerprintMismatch, "roadmap was built for a different domain");
  }
  const std::size_t dim = r.u32();
  rm.samples_drawn = r.u64();
  const std::size_t n = r.count(4 * dim + 20);
  if (n > 0 && dim != domain.dimension()) throw Error(ErrorCode::kDimensionMismatch, "roadmap dimension");
  rm.vertices.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    rm.vertices.push_back(r.state(dim));
    rm.cost_to_start.push_back(r.f64());
    rm.parent.push_back(static_cast<std::int64_t>(r.u64()));
    const std::size_t m = r.count(12);
    auto& adj = rm.adjacency.emplace_back();
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint32_t to = r.u32();
      adj.push_back({to, r.f64()});
    }
  }
  if (!r.at_end()) throw Error(ErrorCode::kParse, "trailing bytes in roadmap");
  for (std::size_t i = 0; i < n; ++i) {
    if (rm.parent[i] < -1 || rm.parent[i] >= static_cast<std::int64_t>(n)) throw Error(ErrorCode::kParse, "bad parent");
    for (const auto& e : rm.adjacency[i]) {
      if (e.to >= n) throw Error(ErrorCode::kParse, "bad edge target");
    }
  }
  return rm;
}

}  // namespace rtplan
