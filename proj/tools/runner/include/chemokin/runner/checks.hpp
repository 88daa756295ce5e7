#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chemokin/runner/config.hpp"

namespace chemokin::runner {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string details;
};

// Scale knobs for the property suite. Most checks pin their own parameters;
// these set the reference grid and the perturbation size.
struct SuiteScale {
  double chi = 0.5;
  double L = 20.0;
  int n = 4000;      // finest grid used by refinement studies
  double eps = 0.01; // perturbation amplitude
  std::uint64_t seed = 1;
  int random_fields = 100;
  double p_assumed = 0.02;
};

SuiteScale suite_scale(const RunConfig& cfg);

int suite_size();
const char* check_name(int id);

// Runs one check; never throws (failures and aborts are reported in the result).
CheckResult run_check(int id, const SuiteScale& s);

std::vector<CheckResult> run_suite(const SuiteScale& s, const std::vector<int>& ids = {},
                                   const std::function<void(const CheckResult&)>& on_result = {});

nlohmann::json to_json(const CheckResult& r);

} // namespace chemokin::runner
