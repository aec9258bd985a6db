#pragma once

#include <string>
#include <vector>

#include "taxiq/network.hpp"

namespace taxiq {

enum class Severity { error, warning };

struct ValidationFinding {
  Severity severity = Severity::error;
  std::string code;     // stable machine-readable tag, e.g. "routing.row_sum"
  std::string message;  // human-readable, names the zone/matrix involved
};

struct ValidationReport {
  std::vector<ValidationFinding> findings;

  bool ok() const {
    for (const auto& f : findings) {
      if (f.severity == Severity::error) return false;
    }
    return true;
  }
};

// Structural and stochastic checks on a config. Finding order is
// deterministic: structural first, then per zone in declaration order, then
// routing matrices in class order. Operations outside this module may assume
// a config that validated with ok() == true.
ValidationReport validate_network(const NetworkConfig& config);

}  // namespace taxiq
