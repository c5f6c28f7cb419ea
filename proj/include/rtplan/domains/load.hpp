#ifndef RTPLAN_DOMAINS_LOAD_HPP
#define RTPLAN_DOMAINS_LOAD_HPP

#include <filesystem>
#include <memory>
#include <optional>

#include "rtplan/lattice.hpp"

namespace rtplan {

struct LoadedDomain {
  std::unique_ptr<LatticeDomain> domain;
  std::optional<DiscreteState> start;  // from the file, when present
};

// Reads a grid map or an arm scene, detected from the file contents.
LoadedDomain load_domain(const std::filesystem::path& path);

}  // namespace rtplan

#endif  // RTPLAN_DOMAINS_LOAD_HPP
