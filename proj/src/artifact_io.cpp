#include "rtplan/artifact_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>

#include "binary_io.hpp"
#include "json.hpp"

namespace rtplan {
namespace {

constexpr char kMagic[4] = {'R', 'T', 'P', 'A'};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

nlohmann::ordered_json state_json(const DiscreteState& s) { return std::vector<std::int32_t>(s.begin(), s.end()); }

}  // namespace

std::vector<std::uint8_t> encode_artifact(const PreprocessArtifact& a) {
  detail::ByteWriter w;
  w.raw(kMagic, 4);
  w.u32(kArtifactVersion);
  w.u64(a.domain_fingerprint);
  const std::size_t dim = a.start.size();
  w.u32(static_cast<std::uint32_t>(dim));
  w.state(a.start);
  w.f64(a.epsilon);
  w.u32(a.depth_cap);

  const ArtifactStats& st = a.stats;
  w.u64(st.seed);
  w.u32(static_cast<std::uint32_t>(st.planner_timeouts.size()));
  for (double t : st.planner_timeouts) w.f64(t);
  w.u32(st.subregions_before_prune);
  w.u32(st.planner_calls);
  w.u32(st.bad_attractors);
  w.u32(st.tiers_used);
  w.u32(st.coverage_reseeds);
  w.u32(st.valid_goal_states);

  w.u32(static_cast<std::uint32_t>(a.subregions.size()));
  for (const auto& r : a.subregions) {
    w.state(r.attractor);
    w.f64(r.radius);
    w.u32(r.depth);
    w.u32(r.path_index);
  }
  w.u32(static_cast<std::uint32_t>(a.invalid_subregions.size()));
  for (const auto& r : a.invalid_subregions) {
    w.state(r.center);
    w.f64(r.radius);
  }
  w.u32(static_cast<std::uint32_t>(a.orphans.size()));
  for (const auto& s : a.orphans) w.state(s);
  w.u32(static_cast<std::uint32_t>(a.library.size()));
  for (const auto& p : a.library) {
    w.f64(p.cost);
    w.u32(static_cast<std::uint32_t>(p.states.size()));
    for (const auto& s : p.states) w.state(s);
  }
  Fnv1a h;
  h.add_bytes(w.bytes());
  w.u64(h.value());
  return std::move(w.bytes());
}

PreprocessArtifact decode_artifact(const std::vector<std::uint8_t>& bytes, const LatticeDomain& domain) {
  if (bytes.size() < 16 || !std::equal(kMagic, kMagic + 4, bytes.begin())) {
    throw Error(ErrorCode::kParse, "not an artifact file");
  }
  {
    detail::ByteReader v(bytes.data() + 4, 4);
    const std::uint32_t version = v.u32();
    if (version != kArtifactVersion) {
      throw Error(ErrorCode::kVersionUnsupported, "artifact version " + std::to_string(version) + " is not supported");
    }
  }
  const std::size_t body = bytes.size() - 8;
  Fnv1a h;
  h.add_bytes({bytes.data(), body});
  if (detail::ByteReader(bytes.data() + body, 8).u64() != h.value()) {
    throw Error(ErrorCode::kChecksumMismatch, "artifact checksum mismatch");
  }

  detail::ByteReader r(bytes.data(), body);
  r.raw(8);
  PreprocessArtifact a;
  a.domain_fingerprint = r.u64();
  if (a.domain_fingerprint != domain.fingerprint()) {
    throw Error(ErrorCode::kFingerprintMismatch, "artifact fingerprint " + hex64(a.domain_fingerprint) +
                                                     " does not match domain " + hex64(domain.fingerprint()));
  }
  const std::size_t dim = r.u32();
  if (dim != domain.dimension()) throw Error(ErrorCode::kDimensionMismatch, "artifact dimension");
  const std::size_t state_bytes = 4 * dim;
  a.start = r.state(dim);
  a.epsilon = r.f64();
  a.depth_cap = r.u32();

  ArtifactStats& st = a.stats;
  st.seed = r.u64();
  const std::size_t tiers = r.count(8);
  for (std::size_t i = 0; i < tiers; ++i) st.planner_timeouts.push_back(r.f64());
  st.subregions_before_prune = r.u32();
  st.planner_calls = r.u32();
  st.bad_attractors = r.u32();
  st.tiers_used = r.u32();
  st.coverage_reseeds = r.u32();
  st.valid_goal_states = r.u32();

  const std::size_t nsub = r.count(state_bytes + 16);
  a.subregions.reserve(nsub);
  for (std::size_t i = 0; i < nsub; ++i) {
    Subregion s;
    s.attractor = r.state(dim);
    s.radius = r.f64();
    s.depth = r.u32();
    s.path_index = r.u32();
    a.subregions.push_back(s);
  }
  const std::size_t ninv = r.count(state_bytes + 8);
  for (std::size_t i = 0; i < ninv; ++i) {
    InvalidSubregion s;
    s.center = r.state(dim);
    s.radius = r.f64();
    a.invalid_subregions.push_back(s);
  }
  const std::size_t norph = r.count(state_bytes);
  for (std::size_t i = 0; i < norph; ++i) a.orphans.push_back(r.state(dim));
  const std::size_t npaths = r.count(12);
  a.library.reserve(npaths);
  for (std::size_t i = 0; i < npaths; ++i) {
    PlannedPath p;
    p.cost = r.f64();
    const std::size_t len = r.count(state_bytes);
    p.states.reserve(len);
    for (std::size_t k = 0; k < len; ++k) p.states.push_back(r.state(dim));
    a.library.push_back(std::move(p));
  }
  if (!r.at_end()) throw Error(ErrorCode::kParse, "trailing bytes in artifact");

  for (std::size_t i = 1; i < a.subregions.size(); ++i) {
    if (a.subregions[i - 1].radius < a.subregions[i].radius) {
      throw Error(ErrorCode::kParse, "subregions are not sorted by radius");
    }
  }
  for (const auto& s : a.subregions) {
    if (s.path_index >= a.library.size()) throw Error(ErrorCode::kParse, "path index out of range");
    const PlannedPath& p = a.library[s.path_index];
    if (p.states.empty() || p.states.front() != a.start || p.states.back() != s.attractor) {
      throw Error(ErrorCode::kParse, "library path for " + s.attractor.to_string() + " has wrong endpoints");
    }
  }
  return a;
}

void save_artifact(std::ostream& os, const PreprocessArtifact& artifact) {
  const auto bytes = encode_artifact(artifact);
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw Error(ErrorCode::kIo, "failed to write artifact");
}

PreprocessArtifact load_artifact(std::istream& is, const LatticeDomain& domain) {
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (is.bad()) throw Error(ErrorCode::kIo, "failed to read artifact");
  return decode_artifact(bytes, domain);
}

void save_artifact_file(const std::filesystem::path& path, const PreprocessArtifact& artifact) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  save_artifact(os, artifact);
}

PreprocessArtifact load_artifact_file(const std::filesystem::path& path, const LatticeDomain& domain) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return load_artifact(is, domain);
}

std::size_t artifact_bytes(const PreprocessArtifact& artifact) { return encode_artifact(artifact).size(); }

void dump_artifact_json(std::ostream& os, const PreprocessArtifact& a) {
  nlohmann::ordered_json j;
  j["format"] = "rtplan-artifact";
  j["version"] = kArtifactVersion;
  j["domain_fingerprint"] = hex64(a.domain_fingerprint);
  j["start"] = state_json(a.start);
  j["epsilon"] = a.epsilon;
  j["depth_cap"] = a.depth_cap;
  j["complete"] = a.complete();
  j["stats"] = {{"seed", a.stats.seed},
                {"planner_timeouts", a.stats.planner_timeouts},
                {"subregions_before_prune", a.stats.subregions_before_prune},
                {"planner_calls", a.stats.planner_calls},
                {"bad_attractors", a.stats.bad_attractors},
                {"tiers_used", a.stats.tiers_used},
                {"coverage_reseeds", a.stats.coverage_reseeds},
                {"valid_goal_states", a.stats.valid_goal_states}};
  auto& subs = j["subregions"] = nlohmann::ordered_json::array();
  for (const auto& r : a.subregions) {
    subs.push_back({{"attractor", state_json(r.attractor)},
                    {"radius", r.radius},
                    {"depth", r.depth},
                    {"path_index", r.path_index},
                    {"path_length", a.library[r.path_index].states.size()},
                    {"path_cost", a.library[r.path_index].cost}});
  }
  auto& inv = j["invalid_subregions"] = nlohmann::ordered_json::array();
  for (const auto& r : a.invalid_subregions) inv.push_back({{"center", state_json(r.center)}, {"radius", r.radius}});
  auto& orph = j["orphans"] = nlohmann::ordered_json::array();
  for (const auto& s : a.orphans) orph.push_back(state_json(s));
  os << j.dump(2) << '\n';
}

}  // namespace rtplan
