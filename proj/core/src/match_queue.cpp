#include "taxiq/match_queue.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "taxiq/errors.hpp"

namespace taxiq {

namespace {

constexpr double kTermCutoff = 1e-15;

double poisson_log_pmf(long k, double m) {
  return k * std::log(m) - m - std::lgamma(static_cast<double>(k) + 1.0);
}

// P(N >= s) for N ~ Poisson(m), summed upward from s until a term drops
// below kTermCutoff of the partial sum.
double poisson_tail(long s, double m) {
  if (s <= 0) return 1.0;
  if (m == 0.0) return 0.0;
  double term = std::exp(poisson_log_pmf(s, m));
  double sum = term;
  for (long x = s + 1; ; ++x) {
    term *= m / static_cast<double>(x);
    sum += term;
    if (term < kTermCutoff * sum) break;
  }
  return sum;
}

}  // namespace

double sync_pair_pmf(const SyncArrivals& arrivals, double t, long s) {
  if (arrivals.lambda_p < 0.0 || arrivals.lambda_v < 0.0) {
    throw std::domain_error("sync_pair_pmf: arrival rates must be >= 0");
  }
  if (t < 0.0) throw std::domain_error("sync_pair_pmf: t must be >= 0");
  if (s < 0) return 0.0;
  const double mp = arrivals.lambda_p * t;
  const double mv = arrivals.lambda_v * t;
  if (mp == 0.0 || mv == 0.0) return s == 0 ? 1.0 : 0.0;
  // P(min = s) = P(V = s) P(P >= s) + P(P = s) P(V >= s + 1).
  const double pv_s = std::exp(poisson_log_pmf(s, mv));
  const double pp_s = std::exp(poisson_log_pmf(s, mp));
  return pv_s * poisson_tail(s, mp) + pp_s * poisson_tail(s + 1, mv);
}

SyncMoments sync_asymptotic_moments(const SyncArrivals& arrivals) {
  if (arrivals.lambda_p < 0.0 || arrivals.lambda_v < 0.0) {
    throw std::domain_error("sync_asymptotic_moments: arrival rates must be >= 0");
  }
  SyncMoments m;
  if (arrivals.lambda_p == arrivals.lambda_v) {
    m.mean_rate = arrivals.lambda_p;
    m.variance_rate = arrivals.lambda_p * (1.0 - 1.0 / std::numbers::pi);
  } else {
    const double mn = std::min(arrivals.lambda_p, arrivals.lambda_v);
    m.mean_rate = mn;
    m.variance_rate = mn;
  }
  return m;
}

Mm1Approximation approximate_mm1(const SyncArrivals& arrivals, double mu) {
  if (mu <= 0.0) throw std::domain_error("approximate_mm1: mu must be > 0");
  Mm1Approximation a;
  a.spec.lambda = std::min(arrivals.lambda_p, arrivals.lambda_v);
  a.spec.mu = mu;
  a.stable = a.spec.lambda < mu;
  return a;
}

QueueMetrics mm1_metrics(const Mm1Spec& spec) {
  if (spec.mu <= 0.0) throw std::domain_error("mm1_metrics: mu must be > 0");
  if (spec.lambda < 0.0) throw std::domain_error("mm1_metrics: lambda must be >= 0");
  if (spec.lambda >= spec.mu) {
    throw NotStableError("mm1_metrics: lambda >= mu");
  }
  QueueMetrics q;
  q.rho = spec.lambda / spec.mu;
  q.l = spec.lambda / (spec.mu - spec.lambda);
  q.lq = spec.lambda * spec.lambda / (spec.mu * (spec.mu - spec.lambda));
  q.w = 1.0 / (spec.mu - spec.lambda);
  q.wq = spec.lambda / (spec.mu * (spec.mu - spec.lambda));
  return q;
}

double mm1_sojourn_pdf(const Mm1Spec& spec, double t) {
  if (spec.mu <= 0.0) throw std::domain_error("mm1_sojourn_pdf: mu must be > 0");
  if (spec.lambda < 0.0 || spec.lambda >= spec.mu) {
    throw NotStableError("mm1_sojourn_pdf: need 0 <= lambda < mu");
  }
  if (t < 0.0) return 0.0;
  const double d = spec.mu - spec.lambda;
  return d * std::exp(-d * t);
}

double service_rate_from_search_time(double lambda_pv, double mean_search_minutes,
                                     SearchTimeForm form) {
  if (lambda_pv < 0.0) throw std::domain_error("service_rate_from_search_time: lambda_pv must be >= 0");
  if (mean_search_minutes <= 0.0) {
    throw std::domain_error("service_rate_from_search_time: mean search time must be > 0");
  }
  switch (form) {
    case SearchTimeForm::reciprocal:
      return lambda_pv + 1.0 / mean_search_minutes;
    case SearchTimeForm::literal:
      return lambda_pv + mean_search_minutes;
  }
  throw std::logic_error("service_rate_from_search_time: bad form");
}

}  // namespace taxiq
