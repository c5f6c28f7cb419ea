#include "rtplan/query.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <optional>
#include <ostream>

#include "json.hpp"
#include "rtplan/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rtplan {
namespace {

int thread_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

void check_fingerprint(const PreprocessArtifact& artifact, const LatticeDomain& domain) {
  if (artifact.domain_fingerprint != domain.fingerprint()) {
    throw Error(ErrorCode::kFingerprintMismatch, "artifact was preprocessed for a different domain");
  }
}

}  // namespace

std::size_t find_covering_subregion(const DiscreteState& goal, const PreprocessArtifact& artifact,
                                    const LatticeDomain& domain, QueryStats* stats) {
  domain.check_dimension(goal);
  if (!domain.in_goal(goal)) throw Error(ErrorCode::kNotCovered, "goal " + goal.to_string() + " is outside the goal region");
  for (std::size_t i = 0; i < artifact.subregions.size(); ++i) {
    if (stats != nullptr) ++stats->subregion_scans;
    if (artifact.subregions[i].covers(goal, domain)) {
      if (stats != nullptr) stats->subregion_index = i;
      return i;
    }
  }
  throw Error(ErrorCode::kNotCovered, "goal " + goal.to_string() + " is not covered by any subregion");
}

PlannedPath find_greedy_path(const DiscreteState& attractor, const DiscreteState& goal, const LatticeDomain& domain,
                             std::size_t step_budget, QueryStats* stats) {
  std::vector<DiscreteState> states{goal};
  DiscreteState s = goal;
  std::size_t steps = 0;
  while (s != attractor) {
    if (steps == step_budget) {
      throw Error(ErrorCode::kStepBudgetExceeded, "greedy walk from " + goal.to_string() + " exceeded " +
                                                      std::to_string(step_budget) + " steps");
    }
    s = greedy_predecessor(s, attractor, domain);
    ++steps;
    if (stats != nullptr) {
      ++stats->greedy_expansions;
      stats->predecessor_evaluations += domain.branching_factor();
    }
    states.push_back(s);
  }
  std::reverse(states.begin(), states.end());
  return make_path(std::move(states), domain);
}

QueryEngine::QueryEngine(const PreprocessArtifact& artifact, const LatticeDomain& domain)
    : artifact_(&artifact), domain_(&domain) {
  check_fingerprint(artifact, domain);
}

std::uint64_t QueryEngine::ops_bound() const noexcept {
  return artifact_->subregions.size() +
         static_cast<std::uint64_t>(artifact_->max_depth()) * domain_->branching_factor();
}

PlannedPath QueryEngine::query(const DiscreteState& goal, QueryStats* stats) const {
  QueryStats local;
  QueryStats& st = stats != nullptr ? *stats : local;
  st = {};
  const std::uint64_t checks_before = instrumentation::validity_checks();
  const auto t0 = std::chrono::steady_clock::now();

  const std::size_t i = find_covering_subregion(goal, *artifact_, *domain_, &st);
  const Subregion& r = artifact_->subregions[i];
  const PlannedPath greedy = find_greedy_path(r.attractor, goal, *domain_, std::size_t{r.depth} + 1, &st);
  const PlannedPath& lib = artifact_->library[r.path_index];
  PlannedPath out;
  out.states.reserve(lib.states.size() + greedy.states.size() - 1);
  out.states = lib.states;
  out.states.insert(out.states.end(), greedy.states.begin() + 1, greedy.states.end());
  out.cost = lib.cost + greedy.cost;

  st.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  st.collision_checks = instrumentation::validity_checks() - checks_before;
  return out;
}

PlannedPath compute_path(const DiscreteState& goal, const PreprocessArtifact& artifact, const LatticeDomain& domain,
                         QueryStats* stats) {
  return QueryEngine(artifact, domain).query(goal, stats);
}

WorstCaseProfile profile_worst_case(const PreprocessArtifact& artifact, const LatticeDomain& domain, Exec exec) {
  const QueryEngine engine(artifact, domain);
  std::vector<DiscreteState> goals;
  domain.goal_region().for_each([&](const DiscreteState& s) {
    if (domain.is_valid(s)) goals.push_back(s);
  });

  struct Part {
    double max_wall = 0.0;
    double sum_wall = 0.0;
    std::uint64_t max_ops = 0;
    std::optional<DiscreteState> argmax;
    std::uint64_t violations = 0;
    std::uint64_t checks = 0;
    std::optional<std::size_t> first_error;
    std::exception_ptr error;
  };
  const int threads = exec == Exec::kParallel ? max_threads() : 1;
  std::vector<Part> parts(static_cast<std::size_t>(threads));
  const auto n = static_cast<std::int64_t>(goals.size());

#pragma omp parallel for schedule(dynamic, 16) num_threads(threads) if (exec == Exec::kParallel)
  for (std::int64_t k = 0; k < n; ++k) {
    Part& part = parts[static_cast<std::size_t>(thread_id())];
    const auto idx = static_cast<std::size_t>(k);
    const DiscreteState& g = goals[idx];
    QueryStats st;
    try {
      engine.query(g, &st);
    } catch (...) {
      if (!part.first_error || idx < *part.first_error) {
        part.first_error = idx;
        part.error = std::current_exception();
      }
      continue;
    }
    part.max_wall = std::max(part.max_wall, st.wall_time_s);
    part.sum_wall += st.wall_time_s;
    if (!part.argmax || st.ops() > part.max_ops || (st.ops() == part.max_ops && g < *part.argmax)) {
      part.max_ops = st.ops();
      part.argmax = g;
    }
    const Subregion& r = artifact.subregions[st.subregion_index];
    const bool within = st.subregion_scans <= artifact.subregions.size() && st.greedy_expansions <= r.depth &&
                        st.predecessor_evaluations <= st.greedy_expansions * domain.branching_factor();
    if (!within) ++part.violations;
    part.checks += st.collision_checks;
  }

  WorstCaseProfile out;
  out.goals = goals.size();
  out.ops_bound = engine.ops_bound();
  std::optional<std::size_t> first_error;
  std::exception_ptr error;
  double sum_wall = 0.0;
  for (const auto& p : parts) {
    if (p.first_error && (!first_error || *p.first_error < *first_error)) {
      first_error = p.first_error;
      error = p.error;
    }
    out.max_wall_time_s = std::max(out.max_wall_time_s, p.max_wall);
    sum_wall += p.sum_wall;
    if (p.argmax && (p.max_ops > out.max_ops || (p.max_ops == out.max_ops && *p.argmax < out.argmax_goal) ||
                     out.argmax_goal.empty())) {
      out.max_ops = p.max_ops;
      out.argmax_goal = *p.argmax;
    }
    out.work_bound_violations += p.violations;
    out.collision_checks += p.checks;
  }
  if (error) std::rethrow_exception(error);
  if (!goals.empty()) out.mean_wall_time_s = sum_wall / static_cast<double>(goals.size());
  return out;
}

CoverageAudit audit_coverage(const PreprocessArtifact& artifact, const LatticeDomain& domain, Exec exec) {
  const std::vector<DiscreteState> states = domain.goal_region().states();
  std::vector<std::uint8_t> valid(states.size(), 0);
  std::vector<std::uint8_t> uncovered(states.size(), 0);
  const auto n = static_cast<std::int64_t>(states.size());
  const int threads = exec == Exec::kParallel ? max_threads() : 1;

#pragma omp parallel for schedule(dynamic, 64) num_threads(threads) if (exec == Exec::kParallel)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (!domain.is_valid(states[i])) continue;
    valid[i] = 1;
    const bool covered = std::any_of(artifact.subregions.begin(), artifact.subregions.end(),
                                     [&](const Subregion& r) { return r.covers(states[i], domain); });
    if (!covered) uncovered[i] = 1;
  }

  CoverageAudit out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    out.valid_states += valid[i];
    if (uncovered[i] != 0) out.uncovered.push_back(states[i]);
  }
  return out;
}

void write_query_stats(std::ostream& os, const QueryStats& stats) {
  nlohmann::ordered_json j;
  j["subregion_index"] = stats.subregion_index;
  j["subregion_scans"] = stats.subregion_scans;
  j["greedy_expansions"] = stats.greedy_expansions;
  j["predecessor_evaluations"] = stats.predecessor_evaluations;
  j["ops"] = stats.ops();
  j["collision_checks"] = stats.collision_checks;
  j["wall_time_s"] = stats.wall_time_s;
  os << j.dump() << '\n';
}

}  // namespace rtplan
