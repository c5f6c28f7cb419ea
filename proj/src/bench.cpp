#include "rtplan/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>

#include "json.hpp"
#include "rtplan/artifact_io.hpp"
#include "rtplan/error.hpp"
#include "rtplan/planners/astar.hpp"
#include "rtplan/planners/prm.hpp"
#include "rtplan/planners/rrt_connect.hpp"
#include "rtplan/query.hpp"
#include "rtplan/random.hpp"

namespace rtplan {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

struct Outcome {
  bool success = false;
  std::uint64_t ops = 0;
  std::uint64_t checks = 0;
};

// Times `run` `reps` times and keeps the fastest; the outcome comes from the
// first repetition (all repetitions are deterministic).
template <class F>
std::pair<Outcome, double> timed(std::size_t reps, F&& run) {
  Outcome first;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < std::max<std::size_t>(reps, 1); ++r) {
    const auto t0 = Clock::now();
    Outcome o = run();
    best = std::min(best, ms_since(t0));
    if (r == 0) first = o;
  }
  return {first, best};
}

BenchRow summarize(const std::string& planner, double budget_s, std::size_t memory,
                   const std::vector<QueryRecord>& recs) {
  BenchRow row;
  row.planner = planner;
  row.budget_s = budget_s;
  row.memory_bytes = memory;
  if (recs.empty()) return row;
  std::vector<double> times;
  std::size_t ok = 0;
  double ops_sum = 0.0;
  for (const auto& r : recs) {
    times.push_back(r.time_ms);
    ok += r.success ? 1 : 0;
    ops_sum += static_cast<double>(r.ops);
    row.p100_ops = std::max(row.p100_ops, r.ops);
  }
  row.mean_ms = std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
  row.p100_ms = *std::max_element(times.begin(), times.end());
  std::sort(times.begin(), times.end());
  const std::size_t m = times.size() / 2;
  row.median_ms = times.size() % 2 == 1 ? times[m] : 0.5 * (times[m - 1] + times[m]);
  row.success_pct = 100.0 * static_cast<double>(ok) / static_cast<double>(recs.size());
  row.mean_ops = ops_sum / static_cast<double>(recs.size());
  return row;
}

}  // namespace

const BenchRow* BenchReport::find(const std::string& planner, double budget_s) const {
  for (const auto& r : rows) {
    if (r.planner == planner && (budget_s < 0.0 || r.budget_s == budget_s)) return &r;
  }
  return nullptr;
}

std::vector<DiscreteState> sample_goal_queries(const LatticeDomain& domain, std::size_t count, std::uint64_t seed) {
  std::vector<DiscreteState> valid;
  domain.goal_region().for_each([&](const DiscreteState& s) {
    if (domain.is_valid(s)) valid.push_back(s);
  });
  std::vector<DiscreteState> out;
  if (valid.empty()) return out;
  Rng rng(seed);
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(valid[rng.uniform(valid.size())]);
  return out;
}

BenchReport run_benchmark(const LatticeDomain& domain, const DiscreteState& start, const BenchConfig& config) {
  BenchReport report;
  report.goals = sample_goal_queries(domain, config.queries, config.seed);

  PreprocessReport pre;
  const AStarPlanner astar;
  const PreprocessArtifact artifact = preprocess_region(domain, start, astar, config.preprocess, &pre);
  report.preprocess_s = pre.total_seconds;
  report.subregions = artifact.subregions.size();

  auto add_records = [&](const std::string& planner, double budget, std::size_t memory, auto&& one) {
    std::vector<QueryRecord> recs;
    for (std::size_t i = 0; i < report.goals.size(); ++i) {
      const DiscreteState& g = report.goals[i];
      auto [o, ms] = timed(config.repetitions, [&] { return one(g); });
      recs.push_back({planner, budget, i, g, o.success, ms, o.ops, o.checks});
    }
    report.rows.push_back(summarize(planner, budget, memory, recs));
    report.records.insert(report.records.end(), recs.begin(), recs.end());
  };

  const QueryEngine engine(artifact, domain);
  add_records("ours", pre.total_seconds, artifact_bytes(artifact), [&](const DiscreteState& g) {
    QueryStats st;
    Outcome o;
    try {
      engine.query(g, &st);
      o.success = true;
    } catch (const Error&) {
      o.success = false;
    }
    o.ops = st.ops();
    o.checks = st.collision_checks;
    return o;
  });

  if (config.run_prm) {
    for (double m : config.budget_multiples) {
      PrmOptions po;
      po.max_vertices = std::numeric_limits<std::size_t>::max();
      po.max_seconds = m * pre.total_seconds;
      po.seed = config.seed;
      const Roadmap rm = prm_build(domain, start, po);
      add_records("prm", po.max_seconds, roadmap_bytes(rm), [&](const DiscreteState& g) {
        PrmQueryStats st;
        Outcome o;
        o.success = prm_query(rm, domain, g, &st).has_value();
        o.ops = st.distance_evaluations + st.validity_checks;
        o.checks = st.validity_checks;
        return o;
      });
    }
  }

  if (config.run_rrt_connect) {
    RrtConnectOptions ro;
    ro.seed = config.seed;
    const RrtConnectPlanner rrt(ro);
    add_records("rrt_connect", 0.0, 0, [&](const DiscreteState& g) {
      const std::uint64_t before = instrumentation::validity_checks();
      Outcome o;
      o.success = rrt.plan(domain, start, g, config.rrt_timeout_s).found();
      o.checks = instrumentation::validity_checks() - before;
      o.ops = o.checks;
      return o;
    });
  }
  return report;
}

void write_bench_csv(std::ostream& os, const BenchReport& report) {
  os << "planner,budget_s,mean_ms,p100_ms,success_pct,memory_bytes\n";
  for (const auto& r : report.rows) {
    os << r.planner << ',' << std::setprecision(6) << r.budget_s << ',' << r.mean_ms << ',' << r.p100_ms << ','
       << r.success_pct << ',' << r.memory_bytes << '\n';
  }
}

void write_query_csv(std::ostream& os, const BenchReport& report) {
  os << "planner,budget_s,query,goal,success,time_ms,ops,collision_checks\n";
  for (const auto& r : report.records) {
    std::string goal;
    for (std::size_t k = 0; k < r.goal.size(); ++k) goal += (k ? " " : "") + std::to_string(r.goal[k]);
    os << r.planner << ',' << std::setprecision(6) << r.budget_s << ',' << r.query << ',' << goal << ','
       << (r.success ? 1 : 0) << ',' << r.time_ms << ',' << r.ops << ',' << r.collision_checks << '\n';
  }
}

BenchScenario load_bench_scenario(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("scenario: ") + e.what());
  }
  BenchScenario sc;
  try {
    if (j.value("format", "") != "rtplan-bench") throw Error(ErrorCode::kParse, "scenario: format must be rtplan-bench");
    if (j.value("version", 0) != 1) throw Error(ErrorCode::kVersionUnsupported, "scenario: unsupported version");
    const std::filesystem::path domain = j.at("domain").get<std::string>();
    sc.domain_path = domain.is_absolute() ? domain : path.parent_path() / domain;
    if (j.contains("start")) sc.start = j.at("start").get<std::vector<std::int32_t>>();
    BenchConfig& c = sc.config;
    c.queries = j.value("queries", c.queries);
    c.seed = j.value("seed", c.seed);
    c.repetitions = j.value("repetitions", c.repetitions);
    c.budget_multiples = j.value("budget_multiples", c.budget_multiples);
    c.run_prm = j.value("prm", c.run_prm);
    c.run_rrt_connect = j.value("rrt_connect", c.run_rrt_connect);
    c.rrt_timeout_s = j.value("rrt_timeout_s", c.rrt_timeout_s);
    c.preprocess.planner_timeouts = j.value("planner_timeouts", c.preprocess.planner_timeouts);
    c.preprocess.epsilon = j.value("epsilon", c.preprocess.epsilon);
    c.preprocess.seed = j.value("preprocess_seed", c.preprocess.seed);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("scenario: ") + e.what());
  }
  return sc;
}

}  // namespace rtplan
