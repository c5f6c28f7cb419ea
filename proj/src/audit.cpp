#include "rtplan/audit.hpp"

#include <algorithm>
#include <unordered_set>

#include "rtplan/query.hpp"

namespace rtplan {
namespace {

struct SubregionFindings {
  std::size_t walks = 0;
  std::size_t walk_failures = 0;
  std::string walk_first;
  bool reach_ok = true;
  std::string reach_first;
};

SubregionFindings audit_subregion(const PreprocessArtifact& a, const LatticeDomain& d, const Subregion& r) {
  SubregionFindings f;
  std::vector<DiscreteState> inside_valid;
  d.goal_region().for_each([&](const DiscreteState& s) {
    if (r.covers(s, d) && d.is_valid(s)) inside_valid.push_back(s);
  });

  for (const auto& s : inside_valid) {
    ++f.walks;
    DiscreteState cur = s;
    std::size_t steps = 0;
    bool ok = true;
    while (cur != r.attractor) {
      if (steps == r.depth) {
        ok = false;
        break;
      }
      const DiscreteState next = greedy_predecessor(cur, r.attractor, d);
      if (!d.is_edge_valid(cur, next)) {
        ok = false;
        break;
      }
      cur = next;
      ++steps;
    }
    if (!ok) {
      if (f.walk_failures++ == 0) f.walk_first = "walk from " + s.to_string() + " to " + r.attractor.to_string();
    }
  }

  ReachabilityTrace trace;
  const ReachabilityResult rerun =
      compute_reachability(r.attractor, d, ReachabilityOptions{a.epsilon, a.depth_cap}, &trace);
  if (rerun.radius != r.radius) {
    f.reach_ok = false;
    f.reach_first = "radius of " + r.attractor.to_string() + " differs on rerun";
    return f;
  }
  std::vector<DiscreteState> reach_inside;
  for (const auto& s : trace.reachable) {
    if (d.heuristic(s, r.attractor) < r.radius) reach_inside.push_back(s);
  }
  std::sort(reach_inside.begin(), reach_inside.end());
  if (reach_inside != inside_valid) {
    f.reach_ok = false;
    f.reach_first = "ball of " + r.attractor.to_string() + " differs from its reachable set";
  }
  return f;
}

}  // namespace

bool ArtifactAudit::ok() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.ok(); });
}

const AuditCheck* ArtifactAudit::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ArtifactAudit audit_artifact(const PreprocessArtifact& a, const LatticeDomain& d, Exec exec) {
  ArtifactAudit out;

  {
    const CoverageAudit cov = audit_coverage(a, d, exec);
    AuditCheck c{"coverage", cov.valid_states, cov.uncovered.size(), {}};
    if (!cov.ok()) c.first_failure = "uncovered " + cov.uncovered.front().to_string();
    out.checks.push_back(c);
  }

  std::vector<SubregionFindings> found(a.subregions.size());
  const auto n = static_cast<std::int64_t>(a.subregions.size());
  const int threads = exec == Exec::kParallel ? max_threads() : 1;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (exec == Exec::kParallel)
  for (std::int64_t i = 0; i < n; ++i) {
    found[static_cast<std::size_t>(i)] = audit_subregion(a, d, a.subregions[static_cast<std::size_t>(i)]);
  }
  AuditCheck walks{"greedy_walks", 0, 0, {}};
  AuditCheck reach{"reachability", a.subregions.size(), 0, {}};
  for (const auto& f : found) {
    walks.checked += f.walks;
    if (f.walk_failures > 0 && walks.failures == 0) walks.first_failure = f.walk_first;
    walks.failures += f.walk_failures;
    if (!f.reach_ok) {
      if (reach.failures++ == 0) reach.first_failure = f.reach_first;
    }
  }
  out.checks.push_back(walks);
  out.checks.push_back(reach);

  AuditCheck lib{"library", a.subregions.size(), 0, {}};
  for (const auto& r : a.subregions) {
    const PathAudit pa = audit_path(d, a.library.at(r.path_index), a.start, r.attractor);
    if (!pa.ok && lib.failures++ == 0) lib.first_failure = r.attractor.to_string() + ": " + pa.reason;
  }
  out.checks.push_back(lib);

  AuditCheck order{"ordering", a.subregions.size(), 0, {}};
  for (std::size_t i = 1; i < a.subregions.size(); ++i) {
    if (a.subregions[i - 1].radius < a.subregions[i].radius && order.failures++ == 0) {
      order.first_failure = "radius order broken at index " + std::to_string(i);
    }
  }
  for (std::size_t j = 0; j < a.subregions.size(); ++j) {
    for (std::size_t i = 0; i < a.subregions.size(); ++i) {
      if (i == j) continue;
      const auto& rj = a.subregions[j];
      const auto& ri = a.subregions[i];
      if (d.heuristic(rj.attractor, ri.attractor) + rj.radius <= ri.radius) {
        if (order.failures++ == 0) order.first_failure = rj.attractor.to_string() + " is contained in " + ri.attractor.to_string();
        break;
      }
    }
  }
  out.checks.push_back(order);
  return out;
}

}  // namespace rtplan
