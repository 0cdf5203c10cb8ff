#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hhinv::report {

// One verified identity instance. `params` is an ordered list so that the
// serialized report is byte-stable for a fixed configuration; the identity
// anchor tag travels as the first parameter.
struct CheckResult {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// Shortest round-trip decimal form, identical to the JSON serialization of
// the same value. Used for numbers embedded in params.
std::string number_string(double v);

struct VerificationReport {
  nlohmann::ordered_json config;
  std::vector<CheckResult> checks;

  int pass_count() const;
  int fail_count() const;
  bool all_pass() const { return fail_count() == 0; }

  // {"config": {...}, "checks": [{"name","params","residual","tol","pass"}...],
  //  "summary": {"pass": N, "fail": M}}
  nlohmann::ordered_json to_json() const;

  // Leading '#'-commented config lines, then a header row and one line per
  // check with params flattened as k=v;k=v.
  std::string to_csv() const;
};

}  // namespace hhinv::report
