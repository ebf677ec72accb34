#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "distgeo/scenario.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Run {
  int code = -1;
  std::string out;  // stdout and stderr together
};

Run cli(const std::string& args) {
  Run r;
  std::string cmd = std::string("\"") + DISTGEO_CLI + "\" " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / ("distgeo_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

fs::path write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("bundled scenarios pass") {
  int seen = 0;
  for (const auto& e : fs::directory_iterator(DISTGEO_SCENARIOS)) {
    if (e.path().extension() != ".json") continue;
    ++seen;
    CAPTURE(e.path().string());
    Run r = cli("run " + quoted(e.path()));
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"scenario", "checks", "golden", "summary", "timing_ms"});
    CHECK(j["summary"]["pass"] == true);
    CHECK(j["summary"]["max_residual"].is_number());
    CHECK_FALSE(j["checks"].empty());
  }
  CHECK(seen >= 8);
}

TEST_CASE("report to a file matches standard output") {
  fs::path out = scratch() / "report.json";
  std::string scen = std::string(DISTGEO_SCENARIOS) + "/sphere3_ssm.json";
  Run a = cli("run \"" + scen + "\" --out " + quoted(out));
  CHECK(a.code == 0);
  Run b = cli("run \"" + scen + "\"");
  CHECK(distgeo::strip_timing(slurp(out)) == distgeo::strip_timing(b.out));
  json j = json::parse(b.out);
  CHECK(j["summary"]["golden_mismatches"] == j["summary"]["golden_mismatches_with_finding"]);
  CHECK(j["golden"].size() > 10);
}

TEST_CASE("strict golden turns findings into failures") {
  std::string scen = std::string(DISTGEO_SCENARIOS) + "/sphere3_ssm.json";
  Run r = cli("run \"" + scen + "\" --strict-golden");
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["summary"]["pass"] == false);
}

TEST_CASE("a failing check exits with one") {
  fs::path p = write("fail.json", R"j({"manifold": "warped-sphere", "f": "exp(t)", "distribution": [1, 2, 3],
    "connection": {"kind": "lc"}, "c0": 0, "checks": ["einstein"]})j");
  Run r = cli("run " + quoted(p));
  CHECK(r.code == 1);
  json j = json::parse(r.out);
  CHECK(j["checks"][0]["pass"] == false);
  CHECK(j["summary"]["failures"] == 1);
}

TEST_CASE("input errors exit with two") {
  CHECK(cli("run /nonexistent/scenario.json").code == 2);
  CHECK(cli("run").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("run x.json --seed notanumber").code == 2);

  Run bad_json = cli("run " + quoted(write("syntax.json", "{\"manifold\": \"sphere3\",, }")));
  CHECK(bad_json.code == 2);
  CHECK(bad_json.out.find("byte") != std::string::npos);

  Run bad_expr = cli("run " + quoted(write("expr.json", R"j({"manifold": "warped-sphere", "f": "2**t", "checks": ["gauss"]})j")));
  CHECK(bad_expr.code == 2);
  CHECK(bad_expr.out.find("offset 2") != std::string::npos);

  Run unknown_check = cli("run " + quoted(write("check.json", R"j({"manifold": "sphere3", "checks": ["bianchi"]})j")));
  CHECK(unknown_check.code == 2);
  CHECK(unknown_check.out.find("bianchi") != std::string::npos);

  Run unknown_key = cli("run " + quoted(write("key.json", R"j({"manifold": "sphere3", "colour": 1, "checks": ["gauss"]})j")));
  CHECK(unknown_key.code == 2);

  Run unknown_preset = cli("run " + quoted(write("preset.json", R"j({"manifold": "torus", "checks": ["gauss"]})j")));
  CHECK(unknown_preset.code == 2);

  Run zero = cli("run " + quoted(write("zero.json", R"j({"manifold": "warped-sphere", "f": "t-1.1", "checks": ["gauss"]})j")));
  CHECK(zero.code == 2);

  Run domain = cli("run " + quoted(write("domain.json", R"j({"manifold": "warped-sphere", "f": "2*t+1",
    "connection": {"kind": "ssm", "U": ["sqrt(t-1)", "0", "0", "0"]}, "checks": ["gauss"]})j")));
  CHECK(domain.code == 2);
  CHECK(domain.out.find("gauss") != std::string::npos);

  Run asym = cli("run " + quoted(write("asym.json", R"j({"manifold": "sphere3", "distribution": [1, 2],
    "connection": {"kind": "stat", "K": [[1, 2, 3, "1"]]}, "checks": ["gauss"]})j")));
  CHECK(asym.code == 2);

  Run chen = cli("run " + quoted(write("chen.json", R"j({"manifold": "heisenberg3", "X": [1, 0], "checks": ["chen_ricci"]})j")));
  CHECK(chen.code == 2);
}

TEST_CASE("catalog lists presets, families and checks") {
  Run r = cli("catalog");
  CHECK(r.code == 0);
  for (const char* s : {"presets:", "families:", "checks:", "sphere3", "warped-heisenberg", "thm5.5/1 (λ₀ = −2/3)",
                        "chen_ricci", "mixed_ricci_flat"})
    CHECK(r.out.find(s) != std::string::npos);
}

TEST_CASE("seeded runs are reproducible") {
  std::string scen = std::string(DISTGEO_SCENARIOS) + "/warped_heisenberg_stat.json";
  Run a = cli("run \"" + scen + "\" --seed 3");
  Run b = cli("run \"" + scen + "\" --seed 3");
  Run c = cli("run \"" + scen + "\" --seed 4");
  CHECK(a.code == 0);
  CHECK(distgeo::strip_timing(a.out) == distgeo::strip_timing(b.out));
  CHECK(distgeo::strip_timing(a.out) != distgeo::strip_timing(c.out));
  CHECK(distgeo::strip_timing(a.out).find("timing_ms") == std::string::npos);
}

TEST_CASE("in-process runner agrees with the binary") {
  std::string scen = std::string(DISTGEO_SCENARIOS) + "/heisenberg_ssnm.json";
  distgeo::RunOutcome o = distgeo::run_scenario_file(scen);
  Run r = cli("run \"" + scen + "\"");
  CHECK(o.exit_code == r.code);
  CHECK(distgeo::strip_timing(o.report) == distgeo::strip_timing(r.out));
  CHECK_THROWS_AS(distgeo::run_scenario("[]"), distgeo::ScenarioError);
  CHECK(distgeo::check_names().size() >= 20);
}
