#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

class Sandbox {
 public:
  Sandbox() : dir_(fs::temp_directory_path() / ("rtplan_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Sandbox() { fs::remove_all(dir_); }
  fs::path path(const std::string& name) const { return dir_ / name; }

  Run run(const std::string& args) const {
    const std::string cmd = std::string(RTPLAN_CLI_PATH) + " " + args + " >" + path("out.txt").string() + " 2>" +
                            path("err.txt").string();
    const int status = std::system(cmd.c_str());
    Run r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(path("out.txt"));
    r.err = slurp(path("err.txt"));
    return r;
  }

 private:
  fs::path dir_;
};

std::string data(const std::string& name) { return (fs::path(RTPLAN_DATA_DIR) / name).string(); }

std::string error_category(const Run& r) { return nlohmann::json::parse(r.err).at("error").get<std::string>(); }

}  // namespace

TEST_CASE("cli: preprocess then query on the empty box") {
  Sandbox sb;
  const std::string art = sb.path("box.rtpa").string();
  Run r = sb.run("preprocess --domain " + data("empty_box.map") + " --out " + art);
  REQUIRE(r.exit_code == 0);
  const auto summary = nlohmann::json::parse(r.out);
  CHECK(summary.at("complete") == true);
  CHECK(summary.at("subregions").get<int>() >= 1);

  r = sb.run("query --domain " + data("empty_box.map") + " --artifact " + art + " --goal 8,8 --out " +
             sb.path("p.txt").string());
  REQUIRE(r.exit_code == 0);
  const auto stats = nlohmann::json::parse(r.out);
  CHECK(stats.at("collision_checks") == 0);
  const std::string path = slurp(sb.path("p.txt"));
  CHECK(path.find("8 8\n") != std::string::npos);
  CHECK(path.rfind("0 0\n") != std::string::npos);

  // Path on stdout, stats on stderr.
  r = sb.run("query --domain " + data("empty_box.map") + " --artifact " + art + " --goal 3,5");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("3 5\n") != std::string::npos);
  CHECK(nlohmann::json::parse(r.err).at("collision_checks") == 0);
}

TEST_CASE("cli: query errors") {
  Sandbox sb;
  const std::string art = sb.path("wall.rtpa").string();
  REQUIRE(sb.run("preprocess --domain " + data("wall_box.map") + " --out " + art).exit_code == 0);

  Run r = sb.run("query --domain " + data("wall_box.map") + " --artifact " + art + " --goal 0,0");
  CHECK(r.exit_code == 1);
  CHECK(error_category(r) == "NotCovered");

  r = sb.run("query --domain " + data("wall_box.map") + " --artifact " + art + " --goal 11,8");
  CHECK(r.exit_code == 1);
  CHECK(error_category(r) == "InvalidArgument");

  r = sb.run("query --domain " + data("corridor.map") + " --artifact " + art + " --goal 40,10");
  CHECK(r.exit_code == 1);
  CHECK(error_category(r) == "FingerprintMismatch");

  r = sb.run("query --domain " + data("wall_box.map") + " --artifact " + sb.path("missing").string() + " --goal 5,5");
  CHECK(r.exit_code == 1);
  CHECK(error_category(r) == "IoError");
}

TEST_CASE("cli: usage errors exit 2") {
  Sandbox sb;
  Run r = sb.run("");
  CHECK(r.exit_code == 2);
  r = sb.run("frobnicate");
  CHECK(r.exit_code == 2);
  CHECK(error_category(r) == "Usage");
  r = sb.run("query --domain " + data("wall_box.map"));
  CHECK(r.exit_code == 2);
  r = sb.run("preprocess --domain " + data("wall_box.map") + " --out " + sb.path("x").string() + " --timeouts a,b");
  CHECK(r.exit_code == 2);
}

TEST_CASE("cli: validate") {
  Sandbox sb;
  Run r = sb.run("validate --domain " + data("two_boxes.map"));
  CHECK(r.exit_code == 1);
  CHECK(error_category(r) == "AssumptionViolated");
  const auto rep = nlohmann::json::parse(r.out);
  const auto& conv = rep.at("checks")[1];
  CHECK(conv.at("check") == "goal_convexity");
  CHECK(conv.at("holds") == false);
  CHECK(!conv.at("violations").empty());

  const std::string art = sb.path("wall.rtpa").string();
  REQUIRE(sb.run("preprocess --domain " + data("wall_box.map") + " --out " + art).exit_code == 0);
  r = sb.run("validate --domain " + data("wall_box.map") + " --artifact " + art);
  CHECK(r.exit_code == 0);
  const auto ok = nlohmann::json::parse(r.out);
  CHECK(ok.at("ok") == true);
  CHECK(ok.at("artifact_audit").size() == 5);
}

TEST_CASE("cli: profile and audit") {
  Sandbox sb;
  const std::string art = sb.path("arm.rtpa").string();
  REQUIRE(sb.run("preprocess --domain " + data("arm_basic.json") + " --out " + art).exit_code == 0);
  Run r = sb.run("profile --domain " + data("arm_basic.json") + " --artifact " + art);
  REQUIRE(r.exit_code == 0);
  const auto p = nlohmann::json::parse(r.out);
  CHECK(p.at("max_ops").get<std::uint64_t>() <= p.at("ops_bound").get<std::uint64_t>());
  CHECK(p.at("collision_checks") == 0);
  r = sb.run("audit --domain " + data("arm_basic.json") + " --artifact " + art);
  CHECK(r.exit_code == 0);
}

TEST_CASE("cli: bench writes the summary csv") {
  Sandbox sb;
  const Run r = sb.run("bench --scenario " + data("corridor_bench.json") + " --queries 20 --csv " +
                       sb.path("b.csv").string());
  REQUIRE(r.exit_code == 0);
  const std::string csv = slurp(sb.path("b.csv"));
  CHECK(csv.rfind("planner,budget_s,mean_ms,p100_ms,success_pct,memory_bytes\n", 0) == 0);
  CHECK(csv.find("\nours,") != std::string::npos);
  CHECK(csv.find("\nprm,") != std::string::npos);
}
