// Serial reference vs OpenMP timings for the exhaustive kernels.
//
//   kernels_bench [--reps N] [--grid-size N]
//
// Prints one CSV row per kernel: kernel,threads,serial_ms,parallel_ms,speedup,agree

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "rtplan/assumptions.hpp"
#include "rtplan/audit.hpp"
#include "rtplan/domains/grid_world.hpp"
#include "rtplan/domains/planar_arm.hpp"
#include "rtplan/fixtures.hpp"
#include "rtplan/planners/astar.hpp"
#include "rtplan/query.hpp"

using namespace rtplan;

namespace {

int disagreements = 0;

template <class F>
double best_ms(int reps, F&& f) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

// Runs `kernel` serially and in parallel; `same` compares the two results.
template <class R>
void row(const char* name, int reps, const std::function<R(Exec)>& kernel, const std::function<bool(const R&, const R&)>& same) {
  R s{}, p{};
  const double ts = best_ms(reps, [&] { s = kernel(Exec::kSerial); });
  const double tp = best_ms(reps, [&] { p = kernel(Exec::kParallel); });
  const bool agree = same(s, p);
  disagreements += agree ? 0 : 1;
  std::printf("%s,%d,%.3f,%.3f,%.2f,%s\n", name, max_threads(), ts, tp, ts / tp, agree ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP kernel timings"};
  int reps = 3;
  std::int32_t grid_size = 50;
  app.add_option("--reps", reps, "Repetitions; the fastest is kept")->capture_default_str();
  app.add_option("--grid-size", grid_size, "Side of the random benchmark grid")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  fixtures::RandomGridOptions go;
  go.size = grid_size;
  go.goal_size = grid_size * 3 / 5;
  const GridConfig gc = fixtures::random_grid(3, go);
  const GridWorld grid(gc);
  const PlanarArm arm(fixtures::arm_basic());
  const PreprocessArtifact grid_art = preprocess_region(grid, *gc.start, AStarPlanner());
  const PreprocessArtifact arm_art = preprocess_region(arm, *fixtures::arm_basic().start, AStarPlanner());

  std::printf("kernel,threads,serial_ms,parallel_ms,speedup,agree\n");
  auto same_report = [](const AssumptionReport& a, const AssumptionReport& b) {
    return a.violation_count == b.violation_count && a.violations == b.violations;
  };
  for (auto [label, dom] : {std::pair<const char*, const LatticeDomain*>{"grid", &grid}, {"arm", &arm}}) {
    const std::string mono = std::string("weak_monotonicity_") + label;
    const std::string conv = std::string("goal_convexity_") + label;
    row<AssumptionReport>(
        mono.c_str(), reps,
        [&](Exec e) {
          CheckerConfig c;
          c.exec = e;
          return check_weak_monotonicity(*dom, c);
        },
        same_report);
    row<AssumptionReport>(
        conv.c_str(), reps,
        [&](Exec e) {
          CheckerConfig c;
          c.exec = e;
          return check_goal_convexity(*dom, c);
        },
        same_report);
  }
  for (auto [label, dom, art] : {std::tuple<const char*, const LatticeDomain*, const PreprocessArtifact*>{"grid", &grid, &grid_art},
                                 {"arm", &arm, &arm_art}}) {
    row<CoverageAudit>(
        (std::string("audit_coverage_") + label).c_str(), reps, [&](Exec e) { return audit_coverage(*art, *dom, e); },
        [](const CoverageAudit& a, const CoverageAudit& b) { return a.uncovered == b.uncovered && a.valid_states == b.valid_states; });
    row<WorstCaseProfile>(
        (std::string("profile_worst_case_") + label).c_str(), reps, [&](Exec e) { return profile_worst_case(*art, *dom, e); },
        [](const WorstCaseProfile& a, const WorstCaseProfile& b) {
          return a.max_ops == b.max_ops && a.argmax_goal == b.argmax_goal && a.work_bound_violations == b.work_bound_violations;
        });
    row<ArtifactAudit>(
        (std::string("audit_artifact_") + label).c_str(), reps, [&](Exec e) { return audit_artifact(*art, *dom, e); },
        [](const ArtifactAudit& a, const ArtifactAudit& b) {
          if (a.checks.size() != b.checks.size()) return false;
          for (std::size_t i = 0; i < a.checks.size(); ++i) {
            if (a.checks[i].failures != b.checks[i].failures || a.checks[i].checked != b.checks[i].checked) return false;
          }
          return true;
        });
  }
  return disagreements == 0 ? 0 : 1;
}
