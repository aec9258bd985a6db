#pragma once

#include <vector>

#include "taxiq/flow_balance.hpp"
#include "taxiq/network.hpp"

namespace taxiq {

// Joint queue-length state. Road occupancy is kept per vehicle class for
// simulator compatibility; the stationary law depends on the class counts
// only through their per-zone sum.
struct NetworkState {
  struct ZoneState {
    long x_ats = 0;  // matched pairs in the ats matching queue
    long x_tts = 0;
    long road[kVehicleClassCount] = {0, 0, 0, 0};

    long road_total() const {
      long t = 0;
      for (long v : road) t += v;
      return t;
    }
  };
  std::vector<ZoneState> zones;
};

struct StabilityReport {
  struct ZoneRatios {
    double rho_ats = 0.0;
    double rho_tts = 0.0;
    double rho_road = 0.0;
  };
  std::vector<ZoneRatios> zones;
  bool stable = false;
};

// Utilization ratios per zone under the given flows. Stable iff every ratio
// is strictly below 1.
StabilityReport check_stability(const NetworkConfig& config, const FlowSolution& flows);

// Probability of the empty network.
double empty_probability(const NetworkConfig& config, const FlowSolution& flows);

// Product-form stationary probability of one state. Throws NotStableError
// when any queue is at or above critical utilization.
double stationary_prob(const NetworkConfig& config, const FlowSolution& flows,
                       const NetworkState& state);

// Per-zone truncation caps for enumeration.
struct ZoneCaps {
  long cap_ats = 0;
  long cap_tts = 0;
  long cap_road = 0;
};

struct StationaryTable {
  // coords holds (x_ats, x_tts, x_road) per zone, zones in declaration
  // order; road occupancy is the class total.
  struct Row {
    std::vector<long> coords;
    double probability = 0.0;
  };
  std::vector<Row> rows;
  double tail_mass = 0.0;  // exact mass outside the enumerated lattice
};

// Enumerates the truncated lattice in odometer order (last coordinate
// fastest). Cell count is capped at 10^7, else StateSpaceTooLargeError.
StationaryTable truncated_distribution(const NetworkConfig& config, const FlowSolution& flows,
                                       const std::vector<ZoneCaps>& caps);

}  // namespace taxiq
