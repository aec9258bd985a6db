#pragma once

#include <vector>

#include "taxiq/flow_balance.hpp"
#include "taxiq/network.hpp"
#include "taxiq/queue_metrics.hpp"

namespace taxiq {

struct ZoneQueueMetrics {
  QueueMetrics ats;
  QueueMetrics tts;
  QueueMetrics road;
};

struct NetworkMetrics {
  std::vector<ZoneQueueMetrics> zones;
  double l_total = 0.0;    // vehicles held across all queues
  double gamma = 0.0;      // total effective vehicle arrival rate
  double w_network = 0.0;  // network mean time in system, l_total / gamma
};

// Steady-state metrics for every queue plus network aggregates. Throws
// NotStableError naming each unstable queue.
NetworkMetrics compute_network_metrics(const NetworkConfig& config, const FlowSolution& flows);

}  // namespace taxiq
