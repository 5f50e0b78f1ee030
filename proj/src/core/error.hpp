#pragma once
#include <stdexcept>
#include <string>

namespace fhaci {

// Invalid parameter values or arguments outside an operation's domain.
// Messages name the offending field/argument so callers can surface them.
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed configuration input (bad JSON, unknown fields, wrong types).
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// An algorithm failed to converge or produced an out-of-range result.
// Carries the best estimate when one exists.
struct numeric_error : std::runtime_error {
  double best_estimate;
  bool has_estimate;
  explicit numeric_error(const std::string& what)
      : std::runtime_error(what), best_estimate(0.0), has_estimate(false) {}
  numeric_error(const std::string& what, double estimate)
      : std::runtime_error(what), best_estimate(estimate), has_estimate(true) {}
};

}  // namespace fhaci
