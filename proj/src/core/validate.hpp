#pragma once
#include <string>
#include <vector>

namespace fhaci {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Built-in self-check suites: "numerics" (special functions and quadrature
// against frozen references), "specialization" (splatter-free limits match
// the splatter-neglecting model exactly), "oracle" (closed forms against
// Monte Carlo / independent quadrature).  trial_scale in (0, 1] shrinks the
// Monte Carlo sizes for smoke runs; 1 is the desk-scale default.
SuiteReport run_validate_suite(const std::string& name,
                               double trial_scale = 1.0);

std::vector<std::string> validate_suite_names();

}  // namespace fhaci
