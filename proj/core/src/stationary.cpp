#include "taxiq/stationary.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "taxiq/errors.hpp"
#include "taxiq/road_queue.hpp"

namespace taxiq {

namespace {

struct ZoneFactors {
  double rho_ats = 0.0;
  double rho_tts = 0.0;
  double r = 0.0;    // road offered load lambda / mu
  double rho_road = 0.0;
  int c = 1;
};

ZoneFactors zone_factors(const NetworkConfig& config, const FlowSolution& flows, std::size_t i) {
  const ZoneParams& p = config.params[i];
  ZoneFactors f;
  if (p.mu_ats <= 0.0 || p.mu_tts <= 0.0 || p.mu_road <= 0.0) {
    throw NotStableError("stationary: zone '" + config.zones[i].value + "' has a zero service rate");
  }
  f.rho_ats = flows.lambda_pv_ats[i] / p.mu_ats;
  f.rho_tts = flows.lambda_pv_tts[i] / p.mu_tts;
  f.r = flows.lambda_road[i] / p.mu_road;
  f.c = p.c_road;
  f.rho_road = f.r / p.c_road;
  return f;
}

void require_stable(const NetworkConfig& config, const StabilityReport& report) {
  if (report.stable) return;
  std::string msg = "stationary: unstable queues:";
  for (std::size_t i = 0; i < report.zones.size(); ++i) {
    const auto& z = report.zones[i];
    const char* zid = config.zones[i].value.c_str();
    if (z.rho_ats >= 1.0) msg += std::string(" ") + zid + "/ats";
    if (z.rho_tts >= 1.0) msg += std::string(" ") + zid + "/tts";
    if (z.rho_road >= 1.0) msg += std::string(" ") + zid + "/road";
  }
  throw NotStableError(msg);
}

// Unnormalized road occupancy factor: r^x / x! below c, geometric decay with
// ratio rho above.
double road_factor(const ZoneFactors& f, long x) {
  double term = 1.0;
  const long kink = std::min<long>(x, f.c);
  for (long n = 1; n <= kink; ++n) term *= f.r / n;
  for (long n = f.c + 1; n <= x; ++n) term *= f.rho_road;
  return term;
}

}  // namespace

StabilityReport check_stability(const NetworkConfig& config, const FlowSolution& flows) {
  const std::size_t n = config.size();
  if (flows.lambda_pv_ats.size() != n || flows.lambda_road.size() != n) {
    throw std::invalid_argument("check_stability: flow solution shape mismatch");
  }
  StabilityReport report;
  report.stable = true;
  for (std::size_t i = 0; i < n; ++i) {
    const ZoneFactors f = zone_factors(config, flows, i);
    report.zones.push_back({f.rho_ats, f.rho_tts, f.rho_road});
    if (f.rho_ats >= 1.0 || f.rho_tts >= 1.0 || f.rho_road >= 1.0) report.stable = false;
  }
  return report;
}

double empty_probability(const NetworkConfig& config, const FlowSolution& flows) {
  const StabilityReport report = check_stability(config, flows);
  require_stable(config, report);
  double p = 1.0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const ZoneFactors f = zone_factors(config, flows, i);
    p *= (1.0 - f.rho_ats) * (1.0 - f.rho_tts);
    p *= mmc_p0(MmcSpec{flows.lambda_road[i], config.params[i].mu_road, f.c});
  }
  return p;
}

double stationary_prob(const NetworkConfig& config, const FlowSolution& flows,
                       const NetworkState& state) {
  if (state.zones.size() != config.size()) {
    throw std::invalid_argument("stationary_prob: state shape mismatch");
  }
  const StabilityReport report = check_stability(config, flows);
  require_stable(config, report);
  double p = empty_probability(config, flows);
  for (std::size_t i = 0; i < config.size(); ++i) {
    const auto& z = state.zones[i];
    if (z.x_ats < 0 || z.x_tts < 0) throw std::domain_error("stationary_prob: negative queue length");
    for (long v : z.road) {
      if (v < 0) throw std::domain_error("stationary_prob: negative road occupancy");
    }
    const ZoneFactors f = zone_factors(config, flows, i);
    p *= std::pow(f.rho_ats, static_cast<double>(z.x_ats));
    p *= std::pow(f.rho_tts, static_cast<double>(z.x_tts));
    p *= road_factor(f, z.road_total());
  }
  return p;
}

StationaryTable truncated_distribution(const NetworkConfig& config, const FlowSolution& flows,
                                       const std::vector<ZoneCaps>& caps) {
  const std::size_t n = config.size();
  if (caps.size() != n) throw std::invalid_argument("truncated_distribution: caps shape mismatch");
  const StabilityReport report = check_stability(config, flows);
  require_stable(config, report);

  double cells = 1.0;
  for (const auto& c : caps) {
    if (c.cap_ats < 0 || c.cap_tts < 0 || c.cap_road < 0) {
      throw std::invalid_argument("truncated_distribution: negative cap");
    }
    cells *= double(c.cap_ats + 1) * double(c.cap_tts + 1) * double(c.cap_road + 1);
  }
  if (cells > 1e7) {
    throw StateSpaceTooLargeError("truncated_distribution: lattice exceeds 1e7 cells");
  }

  // Per-coordinate factor tables; the joint law is their outer product times
  // the empty-state probability.
  const double p_empty = empty_probability(config, flows);
  std::vector<std::vector<double>> fac;  // 3 tables per zone: ats, tts, road
  for (std::size_t i = 0; i < n; ++i) {
    const ZoneFactors f = zone_factors(config, flows, i);
    std::vector<double> ga(caps[i].cap_ats + 1), gt(caps[i].cap_tts + 1), gr(caps[i].cap_road + 1);
    for (long a = 0; a <= caps[i].cap_ats; ++a) ga[a] = std::pow(f.rho_ats, static_cast<double>(a));
    for (long t = 0; t <= caps[i].cap_tts; ++t) gt[t] = std::pow(f.rho_tts, static_cast<double>(t));
    for (long x = 0; x <= caps[i].cap_road; ++x) gr[x] = road_factor(f, x);
    fac.push_back(std::move(ga));
    fac.push_back(std::move(gt));
    fac.push_back(std::move(gr));
  }

  const std::size_t dims = 3 * n;
  std::vector<long> idx(dims, 0);
  std::vector<long> lim(dims);
  for (std::size_t i = 0; i < n; ++i) {
    lim[3 * i] = caps[i].cap_ats;
    lim[3 * i + 1] = caps[i].cap_tts;
    lim[3 * i + 2] = caps[i].cap_road;
  }

  StationaryTable table;
  table.rows.reserve(static_cast<std::size_t>(cells));
  double total = 0.0;
  for (;;) {
    double p = p_empty;
    for (std::size_t d = 0; d < dims; ++d) p *= fac[d][idx[d]];
    table.rows.push_back({idx, p});
    total += p;
    // odometer increment, last coordinate fastest
    std::size_t d = dims;
    while (d > 0) {
      --d;
      if (idx[d] < lim[d]) {
        ++idx[d];
        break;
      }
      idx[d] = 0;
      if (d == 0) {
        table.tail_mass = 1.0 - total;
        return table;
      }
    }
  }
}

}  // namespace taxiq
