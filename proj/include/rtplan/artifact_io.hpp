#ifndef RTPLAN_ARTIFACT_IO_HPP
#define RTPLAN_ARTIFACT_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "rtplan/preprocess.hpp"

namespace rtplan {

inline constexpr std::uint32_t kArtifactVersion = 1;

// Canonical little-endian binary encoding, checksum included.
std::vector<std::uint8_t> encode_artifact(const PreprocessArtifact& artifact);

// Decodes and verifies magic, version, checksum, fingerprint, radius order
// and path endpoints.
PreprocessArtifact decode_artifact(const std::vector<std::uint8_t>& bytes, const LatticeDomain& domain);

void save_artifact(std::ostream& os, const PreprocessArtifact& artifact);
PreprocessArtifact load_artifact(std::istream& is, const LatticeDomain& domain);
void save_artifact_file(const std::filesystem::path& path, const PreprocessArtifact& artifact);
PreprocessArtifact load_artifact_file(const std::filesystem::path& path, const LatticeDomain& domain);

// Serialized size, the memory figure reported by benchmarks.
std::size_t artifact_bytes(const PreprocessArtifact& artifact);

// Human-readable JSON rendering for debugging; not loadable.
void dump_artifact_json(std::ostream& os, const PreprocessArtifact& artifact);

}  // namespace rtplan

#endif  // RTPLAN_ARTIFACT_IO_HPP
