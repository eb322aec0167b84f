#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "rehome/cli.hpp"
#include "rehome/io.hpp"
#include "support.hpp"

using namespace rehome;
using rehome::testing::fixture_path;

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rehome-planner");
  std::ostringstream out, err;
  Run r;
  r.code = cli_dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fx(const std::string& rel) { return fixture_path(rel).string(); }

std::vector<std::string> inputs(const std::string& dir) {
  return {"-t", fx(dir + "/topology.json"), "-f", fx(dir + "/forecast.json"), "-c",
          fx(dir + "/config.json")};
}

std::vector<std::string> cat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("rehome-cli-" + std::to_string(::getpid()) + "-" + name);
}

}  // namespace

TEST_CASE("validate") {
  auto r = run({"validate", "-t", fx("models/topology.json")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("violations: none") != std::string::npos);

  const auto bad = temp_file("bad-topology.json");
  auto t = read_json_file(fixture_path("case-study/topology.json"));
  t["controllers"][0]["kind"] = "Rnc";
  t["controllers"][0]["homed_to"] = json::array({"MGW-Z"});
  write_text_file(bad, t.dump());
  r = run({"validate", "--json", "-t", bad.string()});
  CHECK(r.code == kExitFailure);
  CHECK(json::parse(r.out).at("valid") == false);
  fs::remove(bad);
}

TEST_CASE("evaluate classifies and reports") {
  auto r = run(cat({"evaluate", "--json", "-s", fx("models/model-1.json")}, inputs("models")));
  CHECK(r.code == kExitOk);
  CHECK(json::parse(r.out).at("classification").at("model") == 1);

  r = run(cat({"evaluate", "-s", fx("case-study/scenario.json")}, inputs("case-study")));
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("model: 1") != std::string::npos);
  CHECK(r.out.find("savings:                190000.00") != std::string::npos);
  CHECK(r.out.find("re-homing trigger month: 5") != std::string::npos);

  r = run(cat({"evaluate", "-s", fx("models/invalid-same-mss.json")}, inputs("models")));
  CHECK(r.code == kExitFailure);
  CHECK(r.out.find("[principle-1]") != std::string::npos);
}

TEST_CASE("forecast") {
  auto r = run(cat({"forecast", "--json", "--switch", "MGW-A"}, inputs("case-study")));
  REQUIRE(r.code == kExitOk);
  const auto doc = json::parse(r.out);
  REQUIRE(doc.size() == 1);
  CHECK(doc[0].at("months")[5].at("trunks").get<double>() == doctest::Approx(1470));

  r = run(cat({"forecast", "--switch", "MGW-Q"}, inputs("case-study")));
  CHECK(r.code == kExitFailure);
  CHECK(r.err.find("error:") == 0);
}

TEST_CASE("plan writes the document and the runbook reads it back") {
  const auto plan_file = temp_file("plan.json");
  auto r = run(cat({"plan", "--json", "--threshold", "1", "--backend", "exhaustive", "-o",
                    plan_file.string()},
                   inputs("case-study")));
  REQUIRE(r.code == kExitOk);
  const auto doc = json::parse(r.out);
  CHECK(doc.at("savings") == 190000.0);
  CHECK(read_json_file(plan_file) == doc);

  r = run({"plan", "-t", fx("case-study/topology.json"), "-f", fx("case-study/forecast.json"), "-c",
           fx("case-study/config.json"), "--objective", "min-peak-utilization"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("objective: min-peak-utilization") != std::string::npos);

  const auto rb_file = temp_file("runbook.txt");
  r = run({"runbook", "-t", fx("case-study/topology.json"), "-p", plan_file.string(), "-o",
           rb_file.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("11. [Cutover]") != std::string::npos);
  std::ifstream in(rb_file);
  std::stringstream saved;
  saved << in.rdbuf();
  CHECK(saved.str() == r.out);

  r = run({"runbook", "--json", "-t", fx("case-study/topology.json"), "-p", fx("case-study/scenario.json")});
  CHECK(r.code == kExitOk);
  CHECK(json::parse(r.out).at("runbooks").size() == 1);

  fs::remove(plan_file);
  fs::remove(rb_file);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"validate"}).code == kExitUsage);
  CHECK(run(cat({"plan", "--max-moves", "lots"}, inputs("case-study"))).code == kExitUsage);
  CHECK(run({"validate", "-t", "/no/such/file.json"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("planner errors exit with 1 and a JSON error document") {
  auto r = run(cat({"forecast", "--json", "--switch", "MGW-Q"}, inputs("case-study")));
  CHECK(r.code == kExitFailure);
  CHECK(json::parse(r.out).at("code") == "not-found");
  CHECK(r.err.find("MGW-Q") != std::string::npos);
  CHECK(run(cat({"plan", "--objective", "cheapest"}, inputs("case-study"))).code == kExitUsage);
}

TEST_CASE("the installed binary runs") {
  const std::string cmd = std::string(REHOME_PLANNER_BIN) + " evaluate --json -t " +
                          fx("case-study-actual/topology.json") + " -f " + fx("case-study-actual/forecast.json") +
                          " -c " + fx("case-study-actual/config.json") + " -s " +
                          fx("case-study-actual/scenario.json");
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (auto n = std::fread(buf, 1, sizeof buf, pipe)) output.append(buf, n);
  const int status = ::pclose(pipe);
  CHECK(WEXITSTATUS(status) == 0);
  const auto doc = json::parse(output);
  CHECK(doc.at("cost").at("savings") == 0.0);
}
