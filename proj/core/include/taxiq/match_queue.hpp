#pragma once

#include "taxiq/queue_metrics.hpp"

namespace taxiq {

// Two independent Poisson streams (passengers and vehicles, per minute)
// paired first-come-first-served. The pair count by time t is the minimum of
// the two counting processes.
struct SyncArrivals {
  double lambda_p = 0.0;
  double lambda_v = 0.0;
};

struct Mm1Spec {
  double lambda = 0.0;
  double mu = 1.0;
};

// Long-run growth of the pair count: mean and variance per unit time.
struct SyncMoments {
  double mean_rate = 0.0;
  double variance_rate = 0.0;
};

// Single-server reduction of the matching queue. `stable` is false when the
// paired arrival rate reaches mu; the spec itself is still returned.
struct Mm1Approximation {
  Mm1Spec spec;
  bool stable = true;
};

// P(pair count at time t equals s). Exact: sums the two Poisson tail series,
// truncating terms below 1e-15 of the running partial sum. t = 0 gives a
// point mass at 0.
double sync_pair_pmf(const SyncArrivals& arrivals, double t, long s);

// Asymptotic per-time moments of the pair count. Distinct rates give
// (min, min); equal rates lambda give (lambda, lambda * (1 - 1/pi)).
SyncMoments sync_asymptotic_moments(const SyncArrivals& arrivals);

// M/M/1 surrogate: arrival rate min(lambda_p, lambda_v), service rate mu.
Mm1Approximation approximate_mm1(const SyncArrivals& arrivals, double mu);

// Closed-form M/M/1 steady state. Throws NotStableError when lambda >= mu.
QueueMetrics mm1_metrics(const Mm1Spec& spec);

// Density of the M/M/1 sojourn time: (mu - lambda) e^{-(mu - lambda) t}.
double mm1_sojourn_pdf(const Mm1Spec& spec, double t);

enum class SearchTimeForm {
  // mu = lambda + 1 / mean_search, the inversion of mean sojourn
  // 1 / (mu - lambda). Default.
  reciprocal,
  // mu = lambda + mean_search. Dimensionally inconsistent legacy form, kept
  // selectable for comparison runs.
  literal,
};

// Service-rate estimate from the paired arrival rate and the mean observed
// search (system) time in minutes.
double service_rate_from_search_time(double lambda_pv, double mean_search_minutes,
                                     SearchTimeForm form = SearchTimeForm::reciprocal);

}  // namespace taxiq
