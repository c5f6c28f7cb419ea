#ifndef RTPLAN_BENCH_HPP
#define RTPLAN_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rtplan/lattice.hpp"
#include "rtplan/preprocess.hpp"

namespace rtplan {

struct BenchConfig {
  std::size_t queries = 200;
  std::uint64_t seed = 7;
  // Each query is timed this many times; the minimum is kept.
  std::size_t repetitions = 3;
  // PRM preprocessing budgets as multiples of our preprocessing time T.
  std::vector<double> budget_multiples{1.0, 2.0, 4.0};
  bool run_prm = true;
  bool run_rrt_connect = false;
  double rrt_timeout_s = 1.0;
  PreprocessConfig preprocess;
};

struct BenchRow {
  std::string planner;
  double budget_s = 0.0;  // preprocessing budget or time spent
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double p100_ms = 0.0;
  double success_pct = 0.0;
  std::size_t memory_bytes = 0;
  double mean_ops = 0.0;
  std::uint64_t p100_ops = 0;
};

struct QueryRecord {
  std::string planner;
  double budget_s = 0.0;
  std::size_t query = 0;
  DiscreteState goal;
  bool success = false;
  double time_ms = 0.0;
  std::uint64_t ops = 0;
  std::uint64_t collision_checks = 0;
};

struct BenchReport {
  double preprocess_s = 0.0;  // T
  std::size_t subregions = 0;
  std::vector<DiscreteState> goals;
  std::vector<BenchRow> rows;
  std::vector<QueryRecord> records;

  const BenchRow* find(const std::string& planner, double budget_s = -1.0) const;
};

// Uniformly samples `count` valid goal states (with repetition) from the
// goal region.
std::vector<DiscreteState> sample_goal_queries(const LatticeDomain& domain, std::size_t count, std::uint64_t seed);

// Preprocesses with A*, then runs the same query set through our method and
// every configured baseline.
BenchReport run_benchmark(const LatticeDomain& domain, const DiscreteState& start, const BenchConfig& config);

// Columns: planner,budget_s,mean_ms,p100_ms,success_pct,memory_bytes
void write_bench_csv(std::ostream& os, const BenchReport& report);
void write_query_csv(std::ostream& os, const BenchReport& report);

struct BenchScenario {
  std::filesystem::path domain_path;
  BenchConfig config;
  std::vector<std::int32_t> start;  // empty: take the start from the domain file
};

// JSON scenario; relative paths resolve against the scenario's directory.
BenchScenario load_bench_scenario(const std::filesystem::path& path);

}  // namespace rtplan

#endif  // RTPLAN_BENCH_HPP
