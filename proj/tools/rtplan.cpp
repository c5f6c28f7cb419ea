// rtplan command-line front end.
//
//   rtplan preprocess --domain MAP --out ARTIFACT [--start x,y] [--seed N]
//                     [--timeouts 10,60] [--epsilon 1e-6] [--depth-cap 0]
//                     [--no-prune] [--no-sweep] [--log] [--dump-json FILE]
//   rtplan query      --domain MAP --artifact ARTIFACT --goal x,y [--out PATHFILE]
//   rtplan profile    --domain MAP --artifact ARTIFACT [--serial]
//   rtplan validate   --domain MAP [--artifact ARTIFACT] [--max-report 20]
//   rtplan bench      --scenario FILE [--csv FILE] [--queries-csv FILE] [--queries N]
//   rtplan audit      --domain MAP --artifact ARTIFACT
//
// Exit codes: 0 ok, 1 data error, 2 usage error. Errors are printed to stderr
// as one JSON object {"error": <category>, "message": ...}.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rtplan/artifact_io.hpp"
#include "rtplan/assumptions.hpp"
#include "rtplan/audit.hpp"
#include "rtplan/bench.hpp"
#include "rtplan/domains/load.hpp"
#include "rtplan/error.hpp"
#include "rtplan/planners/astar.hpp"
#include "rtplan/query.hpp"

using namespace rtplan;
using Json = nlohmann::ordered_json;

namespace {

Json state_json(const DiscreteState& s) { return std::vector<std::int32_t>(s.begin(), s.end()); }

int report_error(ErrorCode code, const std::string& message) {
  Json j;
  j["error"] = std::string(to_string(code));
  j["message"] = message;
  std::cerr << j.dump() << '\n';
  return code == ErrorCode::kUsage ? 2 : 1;
}

DiscreteState resolve_start(const LoadedDomain& d, const std::string& text) {
  if (!text.empty()) return parse_state(text);
  if (!d.start) throw Error(ErrorCode::kUsage, "no --start given and the domain file has none");
  return *d.start;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kUsage, "bad number '" + item + "' in '" + text + "'");
    }
  }
  return out;
}

Json checker_json(const AssumptionReport& r, std::size_t max_report) {
  Json j;
  j["check"] = r.check;
  j["holds"] = r.holds();
  j["sampled"] = r.sampled;
  j["pairs_checked"] = r.pairs_checked;
  j["violation_count"] = r.violation_count;
  Json v = Json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < max_report; ++i) {
    v.push_back({state_json(r.violations[i].first), state_json(r.violations[i].second)});
  }
  j["violations"] = v;
  return j;
}

Json audit_json(const ArtifactAudit& a) {
  Json j = Json::array();
  for (const auto& c : a.checks) {
    j.push_back({{"check", c.name},
                 {"ok", c.ok()},
                 {"checked", c.checked},
                 {"failures", c.failures},
                 {"first_failure", c.first_failure}});
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant-time motion planning over a preprocessed goal region"};
  app.require_subcommand(1);

  std::string domain_path, artifact_path, out_path, start_text, goal_text, timeouts_text = "10,60";
  std::string dump_path, scenario_path, csv_path, queries_csv_path;
  std::uint64_t seed = 1;
  double epsilon = 1e-6;
  std::uint32_t depth_cap = 0;
  bool no_prune = false, no_sweep = false, log = false, serial = false;
  std::size_t max_report = 20;
  std::optional<std::size_t> bench_queries;

  auto* pre = app.add_subcommand("preprocess", "Build a query artifact for a domain");
  pre->add_option("--domain", domain_path, "Grid map or arm scene")->required();
  pre->add_option("--out", out_path, "Artifact output file")->required();
  pre->add_option("--start", start_text, "Start state x,y,...; default from the domain file");
  pre->add_option("--seed", seed, "Seed for the initial goal sample")->capture_default_str();
  pre->add_option("--timeouts", timeouts_text, "Planner timeout tiers in seconds")->capture_default_str();
  pre->add_option("--epsilon", epsilon, "Radius padding on exhaustion")->capture_default_str();
  pre->add_option("--depth-cap", depth_cap, "Cap on greedy depth, 0 = none")->capture_default_str();
  pre->add_flag("--no-prune", no_prune, "Keep contained subregions");
  pre->add_flag("--no-sweep", no_sweep, "Skip the final coverage sweep");
  pre->add_flag("--log", log, "Per-subregion progress on stderr");
  pre->add_option("--dump-json", dump_path, "Also write a readable JSON rendering");

  auto* query = app.add_subcommand("query", "Answer one goal query from an artifact");
  query->add_option("--domain", domain_path)->required();
  query->add_option("--artifact", artifact_path)->required();
  query->add_option("--goal", goal_text, "Goal state x,y,...")->required();
  query->add_option("--out", out_path, "Path file; default stdout");

  auto* profile = app.add_subcommand("profile", "Query every valid goal state and report the worst case");
  profile->add_option("--domain", domain_path)->required();
  profile->add_option("--artifact", artifact_path)->required();
  profile->add_flag("--serial", serial, "Use the serial reference loop");

  auto* validate = app.add_subcommand("validate", "Check the domain assumptions (and an artifact, if given)");
  validate->add_option("--domain", domain_path)->required();
  validate->add_option("--artifact", artifact_path, "Also audit this artifact");
  validate->add_option("--max-report", max_report, "Violations listed per check")->capture_default_str();

  auto* audit = app.add_subcommand("audit", "Audit an artifact against its domain");
  audit->add_option("--domain", domain_path)->required();
  audit->add_option("--artifact", artifact_path)->required();

  auto* bench = app.add_subcommand("bench", "Run a benchmark scenario");
  bench->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  bench->add_option("--csv", csv_path, "Summary CSV; default stdout");
  bench->add_option("--queries-csv", queries_csv_path, "Per-query CSV");
  bench->add_option("--queries", bench_queries, "Override the query count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(ErrorCode::kUsage, e.what());
  }

  try {
    if (*pre) {
      const LoadedDomain d = load_domain(domain_path);
      const DiscreteState start = resolve_start(d, start_text);
      PreprocessConfig cfg;
      cfg.seed = seed;
      cfg.planner_timeouts = parse_list(timeouts_text);
      cfg.epsilon = epsilon;
      cfg.depth_cap = depth_cap;
      cfg.prune = !no_prune;
      cfg.coverage_sweep = !no_sweep;
      if (log) cfg.log = &std::cerr;
      PreprocessReport rep;
      const PreprocessArtifact a = preprocess_region(*d.domain, start, AStarPlanner(), cfg, &rep);
      save_artifact_file(out_path, a);
      if (!dump_path.empty()) {
        std::ofstream os(dump_path);
        if (!os) throw Error(ErrorCode::kIo, "cannot open " + dump_path);
        dump_artifact_json(os, a);
      }
      Json j;
      j["artifact"] = out_path;
      j["subregions"] = a.subregions.size();
      j["subregions_before_prune"] = a.stats.subregions_before_prune;
      j["invalid_subregions"] = a.invalid_subregions.size();
      j["max_depth"] = a.max_depth();
      j["bytes"] = artifact_bytes(a);
      j["complete"] = a.complete();
      j["orphans"] = a.orphans.size();
      j["valid_goal_states"] = a.stats.valid_goal_states;
      j["total_s"] = rep.total_seconds;
      j["planner_s"] = rep.planner_seconds;
      std::cout << j.dump() << '\n';
      return 0;
    }

    if (*query) {
      const LoadedDomain d = load_domain(domain_path);
      const PreprocessArtifact a = load_artifact_file(artifact_path, *d.domain);
      const DiscreteState goal = parse_state(goal_text);
      d.domain->check_dimension(goal);
      if (!d.domain->in_goal(goal)) {
        throw Error(ErrorCode::kNotCovered, "goal " + goal.to_string() + " is outside the goal region");
      }
      if (!d.domain->is_valid(goal)) throw Error(ErrorCode::kInvalidArgument, "goal " + goal.to_string() + " is in collision");
      QueryStats st;
      const PlannedPath p = QueryEngine(a, *d.domain).query(goal, &st);
      if (out_path.empty()) {
        write_path(std::cout, p);
      } else {
        std::ofstream os(out_path);
        if (!os) throw Error(ErrorCode::kIo, "cannot open " + out_path);
        write_path(os, p);
      }
      // Stats go to stderr when the path occupies stdout.
      write_query_stats(out_path.empty() ? std::cerr : std::cout, st);
      return 0;
    }

    if (*profile) {
      const LoadedDomain d = load_domain(domain_path);
      const PreprocessArtifact a = load_artifact_file(artifact_path, *d.domain);
      const WorstCaseProfile w = profile_worst_case(a, *d.domain, serial ? Exec::kSerial : Exec::kParallel);
      Json j;
      j["goals"] = w.goals;
      j["subregions"] = a.subregions.size();
      j["max_depth"] = a.max_depth();
      j["branching_factor"] = d.domain->branching_factor();
      j["ops_bound"] = w.ops_bound;
      j["max_ops"] = w.max_ops;
      j["argmax_goal"] = state_json(w.argmax_goal);
      j["work_bound_violations"] = w.work_bound_violations;
      j["collision_checks"] = w.collision_checks;
      j["max_wall_time_s"] = w.max_wall_time_s;
      j["mean_wall_time_s"] = w.mean_wall_time_s;
      std::cout << j.dump(2) << '\n';
      return w.work_bound_violations == 0 && w.collision_checks == 0 ? 0 : 1;
    }

    if (*validate) {
      const LoadedDomain d = load_domain(domain_path);
      CheckerConfig cc;
      const AssumptionReport mono = check_weak_monotonicity(*d.domain, cc);
      const AssumptionReport conv = check_goal_convexity(*d.domain, cc);
      const AssumptionReport order = check_tie_break_order(*d.domain, cc);
      Json j;
      j["domain"] = domain_path;
      j["fingerprint"] = d.domain->fingerprint();
      j["checks"] = {checker_json(mono, max_report), checker_json(conv, max_report), checker_json(order, max_report)};
      bool ok = mono.holds() && conv.holds() && order.holds();
      if (!artifact_path.empty()) {
        const PreprocessArtifact a = load_artifact_file(artifact_path, *d.domain);
        const ArtifactAudit au = audit_artifact(a, *d.domain);
        j["artifact_audit"] = audit_json(au);
        ok = ok && au.ok();
      }
      j["ok"] = ok;
      std::cout << j.dump(2) << '\n';
      if (!ok) return report_error(ErrorCode::kAssumptionViolated, "one or more checks failed; see stdout");
      return 0;
    }

    if (*audit) {
      const LoadedDomain d = load_domain(domain_path);
      const PreprocessArtifact a = load_artifact_file(artifact_path, *d.domain);
      const ArtifactAudit au = audit_artifact(a, *d.domain);
      Json j;
      j["ok"] = au.ok();
      j["checks"] = audit_json(au);
      std::cout << j.dump(2) << '\n';
      if (!au.ok()) return report_error(ErrorCode::kAuditFailed, "artifact audit failed; see stdout");
      return 0;
    }

    if (*bench) {
      BenchScenario sc = load_bench_scenario(scenario_path);
      if (bench_queries) sc.config.queries = *bench_queries;
      const LoadedDomain d = load_domain(sc.domain_path);
      const DiscreteState start = sc.start.empty() ? resolve_start(d, "") : DiscreteState(std::span<const std::int32_t>(sc.start));
      const BenchReport rep = run_benchmark(*d.domain, start, sc.config);
      if (csv_path.empty()) {
        write_bench_csv(std::cout, rep);
      } else {
        std::ofstream os(csv_path);
        if (!os) throw Error(ErrorCode::kIo, "cannot open " + csv_path);
        write_bench_csv(os, rep);
      }
      if (!queries_csv_path.empty()) {
        std::ofstream os(queries_csv_path);
        if (!os) throw Error(ErrorCode::kIo, "cannot open " + queries_csv_path);
        write_query_csv(os, rep);
      }
      return 0;
    }
  } catch (const Error& e) {
    return report_error(e.code(), e.what());
  } catch (const std::exception& e) {
    return report_error(ErrorCode::kIo, e.what());
  }
  return 2;
}
