#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "taxiq/flow_balance.hpp"
#include "taxiq/network.hpp"
#include "taxiq/trips.hpp"

namespace taxiq {

struct SimParams {
  std::uint64_t seed = 1;
  double horizon = 10000.0;  // minutes
  double warmup = -1.0;      // minutes; negative means 10% of horizon
  int replications = 1;
  int jobs = 1;               // worker threads over replications
  bool collect_trips = false; // emit TripRecords (completed trips + vehicle markers)
  bool debug_checks = false;  // O(1)-per-event ordering assertions

  double effective_warmup() const { return warmup < 0.0 ? 0.1 * horizon : warmup; }
};

// Mean and standard error across replications.
struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

struct SimQueueStats {
  Estimate rho;  // busy-server fraction
  Estimate l;    // time-average number in system
  Estimate lq;
  Estimate w;    // per-entity system time, minutes
  Estimate wq;
  Estimate throughput;     // completions per minute
  long long completed = 0; // entities behind w, summed over replications
};

struct SimZoneReport {
  SimQueueStats match_ats;
  SimQueueStats match_tts;
  SimQueueStats road;
  // Unpaired backlog of the matching buffers, time-averaged.
  Estimate passenger_backlog_ats;
  Estimate passenger_backlog_tts;
  Estimate vehicle_backlog_ats;
  Estimate vehicle_backlog_tts;
  // Exit counts by drawn routing class, summed over replications.
  long long exits_by_class[kVehicleClassCount] = {0, 0, 0, 0};
};

struct SimReport {
  SimParams params;
  std::vector<SimZoneReport> zones;

  // Integer conservation over the full horizon, summed over replications:
  // externally arrived vehicles = exited + still in system.
  long long vehicles_arrived = 0;
  long long vehicles_exited = 0;
  long long vehicles_in_system = 0;
  bool vehicle_conservation_ok = false;

  // Pairs formed by the horizon per replication, zone-major then service
  // (ats, tts). Not warmup-windowed.
  std::vector<std::vector<long long>> pairs_formed_per_rep;

  std::vector<TripRecord> trips;  // populated when params.collect_trips
};

// Event-driven simulation of the exact network: synchronized FCFS matching
// with a single pair server per (zone, service), c-server FCFS road nodes,
// portion-drawn class routing, pickup capture of through flow. Identical
// (config, params) inputs produce identical reports, including with jobs > 1.
SimReport simulate(const NetworkConfig& config, const SimParams& params);

struct ComparisonRow {
  std::string zone;
  std::string queue;   // "match_ats" | "match_tts" | "road"
  std::string metric;  // "w" | "l"
  double analytic = 0.0;
  double simulated = 0.0;
  double rel_err = 0.0;
  bool analytic_defined = true;  // false when the queue is not stable
  bool flagged = false;          // rel_err above threshold
};

// Side-by-side discrepancy table between a simulation report and the
// analytic steady state under the given flows.
std::vector<ComparisonRow> compare_to_analytic(const NetworkConfig& config, const SimReport& report,
                                               const FlowSolution& flows,
                                               double flag_threshold = 0.03);

}  // namespace taxiq
