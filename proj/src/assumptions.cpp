#include "rtplan/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rtplan/random.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rtplan {
namespace {

// Returns true when the pair violates the property under test.
using PairPredicate = bool (*)(const LatticeDomain&, const DiscreteState&, const DiscreteState&);

bool violates_monotonicity(const LatticeDomain& d, const DiscreteState& s1, const DiscreteState& s2) {
  double best = std::numeric_limits<double>::infinity();
  d.for_each_predecessor(s1, [&](const DiscreteState& p) { best = std::min(best, d.heuristic(p, s2)); });
  return best > d.heuristic(s1, s2) + kHeuristicTieTolerance;
}

bool violates_convexity(const LatticeDomain& d, const DiscreteState& s1, const DiscreteState& s2) {
  return !d.in_goal(greedy_predecessor(s1, s2, d));
}

struct PairResult {
  std::size_t count = 0;
  std::vector<StatePair> found;
};

void finish(AssumptionReport& report, std::vector<PairResult>& parts, std::size_t max_reported) {
  for (auto& part : parts) {
    report.violation_count += part.count;
    report.violations.insert(report.violations.end(), part.found.begin(), part.found.end());
  }
  std::sort(report.violations.begin(), report.violations.end());
  if (report.violations.size() > max_reported) report.violations.resize(max_reported);
}

AssumptionReport run_pair_check(const LatticeDomain& domain, const CheckerConfig& config,
                                const char* name, PairPredicate violates) {
  AssumptionReport report;
  report.check = name;
  const std::vector<DiscreteState> states = domain.goal_region().states();
  const std::size_t n = states.size();
  const bool exhaustive = n == 0 || n <= config.pair_budget / n;
  const int threads = config.exec == Exec::kParallel ? max_threads() : 1;
  std::vector<PairResult> parts(static_cast<std::size_t>(threads));

  auto record = [&](PairResult& part, const DiscreteState& a, const DiscreteState& b) {
    ++part.count;
    // Parts keep every violation; the merged list is sorted before
    // truncation, so it does not depend on the thread split.
    part.found.emplace_back(a, b);
  };

  if (exhaustive) {
    report.pairs_checked = n * (n > 0 ? n - 1 : 0);
    const auto total = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads) if (config.exec == Exec::kParallel)
    for (std::int64_t i = 0; i < total; ++i) {
#ifdef _OPENMP
      PairResult& part = parts[static_cast<std::size_t>(omp_get_thread_num())];
#else
      PairResult& part = parts[0];
#endif
      const auto& s1 = states[static_cast<std::size_t>(i)];
      for (std::size_t j = 0; j < n; ++j) {
        if (static_cast<std::size_t>(i) == j) continue;
        if (violates(domain, s1, states[j])) record(part, s1, states[j]);
      }
    }
  } else {
    report.sampled = true;
    Rng rng(config.seed);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(config.sample_pairs);
    while (pairs.size() < config.sample_pairs) {
      const std::size_t a = rng.uniform(n);
      const std::size_t b = rng.uniform(n);
      if (a != b) pairs.emplace_back(a, b);
    }
    report.pairs_checked = pairs.size();
    const auto total = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(static) num_threads(threads) if (config.exec == Exec::kParallel)
    for (std::int64_t i = 0; i < total; ++i) {
#ifdef _OPENMP
      PairResult& part = parts[static_cast<std::size_t>(omp_get_thread_num())];
#else
      PairResult& part = parts[0];
#endif
      const auto [a, b] = pairs[static_cast<std::size_t>(i)];
      if (violates(domain, states[a], states[b])) record(part, states[a], states[b]);
    }
  }
  finish(report, parts, config.max_reported);
  return report;
}

}  // namespace

AssumptionReport check_weak_monotonicity(const LatticeDomain& domain, const CheckerConfig& config) {
  return run_pair_check(domain, config, "weak_monotonicity", &violates_monotonicity);
}

AssumptionReport check_goal_convexity(const LatticeDomain& domain, const CheckerConfig& config) {
  return run_pair_check(domain, config, "goal_convexity", &violates_convexity);
}

AssumptionReport check_tie_break_order(const LatticeDomain& domain, const CheckerConfig& config) {
  AssumptionReport report;
  report.check = "tie_break_order";
  report.sampled = true;
  const std::vector<DiscreteState> states = domain.goal_region().states();
  if (states.empty()) return report;
  Rng rng(config.seed);
  const std::size_t samples = std::min<std::size_t>(config.sample_pairs, 20'000);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto& a = states[rng.uniform(states.size())];
    const auto& b = states[rng.uniform(states.size())];
    const auto& c = states[rng.uniform(states.size())];
    ++report.pairs_checked;
    const bool total = (a < b) || (b < a) || (a == b);
    const bool antisymmetric = !((a < b) && (b < a));
    const bool transitive = !((a < b) && (b < c)) || (a < c);
    if (!(total && antisymmetric && transitive)) {
      ++report.violation_count;
      if (report.violations.size() < config.max_reported) report.violations.emplace_back(a, b);
    }
  }
  return report;
}

}  // namespace rtplan
