#include "taxiq/network_metrics.hpp"

#include "taxiq/errors.hpp"
#include "taxiq/match_queue.hpp"
#include "taxiq/road_queue.hpp"
#include "taxiq/stationary.hpp"

namespace taxiq {

NetworkMetrics compute_network_metrics(const NetworkConfig& config, const FlowSolution& flows) {
  const StabilityReport stability = check_stability(config, flows);
  if (!stability.stable) {
    std::string msg = "network metrics undefined, unstable queues:";
    for (std::size_t i = 0; i < stability.zones.size(); ++i) {
      const auto& z = stability.zones[i];
      const char* zid = config.zones[i].value.c_str();
      if (z.rho_ats >= 1.0) msg += std::string(" ") + zid + "/ats";
      if (z.rho_tts >= 1.0) msg += std::string(" ") + zid + "/tts";
      if (z.rho_road >= 1.0) msg += std::string(" ") + zid + "/road";
    }
    throw NotStableError(msg);
  }

  NetworkMetrics m;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const ZoneParams& p = config.params[i];
    ZoneQueueMetrics z;
    z.ats = mm1_metrics(Mm1Spec{flows.lambda_pv_ats[i], p.mu_ats});
    z.tts = mm1_metrics(Mm1Spec{flows.lambda_pv_tts[i], p.mu_tts});
    z.road = mmc_metrics(MmcSpec{flows.lambda_road[i], p.mu_road, p.c_road});
    m.l_total += z.ats.l + z.tts.l + z.road.l;
    m.gamma += flows.lambda_hat_v_ats[i] + flows.lambda_hat_v_tts[i];
    m.zones.push_back(z);
  }
  m.w_network = m.gamma > 0.0 ? m.l_total / m.gamma : 0.0;
  return m;
}

}  // namespace taxiq
