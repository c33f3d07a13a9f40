#pragma once

// The numbered acceptance checks, shared by the test binary and
// `qig verify-all`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qig {

struct CheckResult {
  std::string id;  // "1".."12", extras "x1"..
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AcceptanceOptions {
  bool monte_carlo = true;
  bool extras = false;  // checks beyond the numbered list
  std::uint64_t mc_seed = 12345;
};

// Runs the checks in order; `progress` (optional) sees each result as it
// completes. Exceptions inside a check turn into a failed result.
std::vector<CheckResult> run_acceptance(const AcceptanceOptions& opts = {},
                                        const std::function<void(const CheckResult&)>& progress = {});

std::string format_result(const CheckResult& r);

}  // namespace qig
