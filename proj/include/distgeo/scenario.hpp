#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "distgeo/errors.hpp"

namespace distgeo {

// Malformed or inconsistent scenario input; maps to exit status 2.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

struct RunOptions {
  bool strict_golden = false;  // golden mismatches fail the golden check
  std::uint64_t seed = 0;      // drives the randomized checks
};

struct RunOutcome {
  int exit_code = 0;   // 0 when every check passes, 1 otherwise
  std::string report;  // JSON, keys scenario, checks, golden, summary, timing_ms
};

// Check names accepted in a scenario's "checks" list.
std::vector<std::string> check_names();

// Loads the whole scenario before running anything, so unknown checks and bad
// expressions throw ScenarioError without partial output. Domain errors met
// while checking also throw ScenarioError, naming the check and t.
RunOutcome run_scenario(const std::string& json_text, const RunOptions& opts = {});
RunOutcome run_scenario_file(const std::string& path, const RunOptions& opts = {});

// Identity, reduction, golden, Chen, family and randomized suites over every preset.
RunOutcome verify_all(const RunOptions& opts = {});

// Presets with their anchors and the solution family labels, one per line.
std::string catalog_list();

// The report with timing_ms removed, for byte comparisons.
std::string strip_timing(const std::string& report);

}  // namespace distgeo
