#pragma once

#include <vector>

#include "taxiq/queue_metrics.hpp"

namespace taxiq {

// Multi-server road segment: c parallel exponential servers, shared FCFS
// overflow queue.
struct MmcSpec {
  double lambda = 0.0;
  double mu = 1.0;
  int c = 1;
};

// One observation of a segment's fundamental diagram: concurrent vehicle
// count against realized production (throughput).
struct MfdSample {
  double accumulation = 0.0;
  double production = 0.0;
};

struct MfdEstimate {
  int servers = 1;
  // True when the binned mean production is still rising at the largest
  // observed accumulation, so `servers` is only a lower bound.
  bool at_boundary = false;
};

// Probability of an empty system. Throws NotStableError when lambda >= c mu.
double mmc_p0(const MmcSpec& spec);

// Closed-form M/M/c steady state. Waiting time at lambda = 0 is defined as 0.
QueueMetrics mmc_metrics(const MmcSpec& spec);

// Server-count estimate: accumulation at the peak of binned mean production.
// Bins have width max(1, observed range / 20). Requires >= 10 samples over
// >= 5 distinct accumulation values, else InsufficientDataError.
MfdEstimate estimate_servers_from_mfd(const std::vector<MfdSample>& samples);

}  // namespace taxiq
