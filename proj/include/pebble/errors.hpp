#pragma once

#include <stdexcept>
#include <string>

namespace pebble {

/// Thrown when an exhaustive search or enumeration exceeds its configured cap.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when estimated solvability probabilities decrease in t beyond CI noise.
struct MonotonicityViolation : std::runtime_error {
  explicit MonotonicityViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pebble
