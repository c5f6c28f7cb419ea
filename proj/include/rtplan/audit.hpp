#ifndef RTPLAN_AUDIT_HPP
#define RTPLAN_AUDIT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "rtplan/parallel.hpp"
#include "rtplan/preprocess.hpp"

namespace rtplan {

struct AuditCheck {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const noexcept { return failures == 0; }
};

struct ArtifactAudit {
  std::vector<AuditCheck> checks;

  bool ok() const noexcept;
  const AuditCheck* find(const std::string& name) const;
};

// Post-hoc audit of an artifact against its domain:
//   coverage        every valid goal state lies in some subregion
//   greedy_walks    every valid covered state walks to the attractor over
//                   valid edges within the recorded depth
//   reachability    each subregion's ball matches a fresh reachability rerun
//   library         every library path is collision-free start -> attractor
//   ordering        radii descending, no subregion contained in another
// Performs collision checks; never part of a query.
ArtifactAudit audit_artifact(const PreprocessArtifact& artifact, const LatticeDomain& domain,
                             Exec exec = Exec::kParallel);

}  // namespace rtplan

#endif  // RTPLAN_AUDIT_HPP
