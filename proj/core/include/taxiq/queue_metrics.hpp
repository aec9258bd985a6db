#pragma once

namespace taxiq {

// Steady-state summary of a single queue. Rates are per minute, times in
// minutes. Satisfies Little's law (l = lambda * w, lq = lambda * wq) and
// w = wq + mean service time.
struct QueueMetrics {
  double rho = 0.0;  // server utilization, in [0, 1)
  double l = 0.0;    // mean number in system
  double lq = 0.0;   // mean number waiting
  double w = 0.0;    // mean time in system
  double wq = 0.0;   // mean time waiting
};

}  // namespace taxiq
