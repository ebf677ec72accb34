#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "distgeo/scenario.hpp"

namespace {

int emit(const distgeo::RunOutcome& r, const std::string& out) {
  if (out.empty()) {
    std::cout << r.report;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "distgeo: cannot write '" << out << "'\n";
      return 2;
    }
    f << r.report;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame-field verification of distribution geometry"};
  app.require_subcommand(1);

  std::string file, out;
  bool strict = false;
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "Run a scenario file and print its report");
  run->add_option("file", file, "Scenario JSON")->required();
  run->add_option("--out", out, "Write the report here instead of stdout");
  run->add_flag("--strict-golden", strict, "Fail on golden mismatches");
  run->add_option("--seed", seed, "Seed for the randomized checks");

  auto* catalog = app.add_subcommand("catalog", "List presets, solution families and checks");

  auto* all = app.add_subcommand("verify-all", "Run every built-in suite");
  all->add_option("--out", out, "Write the report here instead of stdout");
  all->add_flag("--strict-golden", strict, "Fail on golden mismatches");
  all->add_option("--seed", seed, "Seed for the randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    distgeo::RunOptions opts{strict, seed};
    if (*catalog) {
      std::cout << distgeo::catalog_list();
      return 0;
    }
    if (*run) return emit(distgeo::run_scenario_file(file, opts), out);
    return emit(distgeo::verify_all(opts), out);
  } catch (const distgeo::ScenarioError& e) {
    std::cerr << "distgeo: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "distgeo: internal error: " << e.what() << "\n";
    return 1;
  }
}
