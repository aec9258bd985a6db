#include "taxiq/road_queue.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "taxiq/errors.hpp"
#include "taxiq/match_queue.hpp"

namespace taxiq {

namespace {

void check_spec(const MmcSpec& spec) {
  if (spec.mu <= 0.0) throw std::domain_error("mmc: mu must be > 0");
  if (spec.lambda < 0.0) throw std::domain_error("mmc: lambda must be >= 0");
  if (spec.c < 1) throw std::domain_error("mmc: c must be >= 1");
  if (spec.lambda >= spec.c * spec.mu) {
    throw NotStableError("mmc: lambda >= c * mu");
  }
}

// Erlang terms r^n / n! accumulated by recurrence; r < c keeps them finite
// for any practical server count.
double erlang_term_sum(double r, int c, double* last_term) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < c; ++n) {
    term *= r / n;
    sum += term;
  }
  *last_term = term * r / c;  // r^c / c!
  return sum;
}

}  // namespace

double mmc_p0(const MmcSpec& spec) {
  check_spec(spec);
  if (spec.c == 1) {
    return 1.0 - spec.lambda / spec.mu;  // single-server closed form
  }
  const double r = spec.lambda / spec.mu;
  const double rho = spec.lambda / (spec.c * spec.mu);
  double tc = 0.0;
  const double partial = erlang_term_sum(r, spec.c, &tc);
  return 1.0 / (partial + tc / (1.0 - rho));
}

QueueMetrics mmc_metrics(const MmcSpec& spec) {
  check_spec(spec);
  if (spec.c == 1) {
    // Single-server case delegates so both entry points agree bitwise.
    return mm1_metrics(Mm1Spec{spec.lambda, spec.mu});
  }
  const double r = spec.lambda / spec.mu;
  const double rho = spec.lambda / (spec.c * spec.mu);
  QueueMetrics q;
  q.rho = rho;
  if (spec.lambda == 0.0) {
    q.w = 1.0 / spec.mu;
    return q;
  }
  const double p0 = mmc_p0(spec);
  double tc = 0.0;
  erlang_term_sum(r, spec.c, &tc);
  q.lq = p0 * tc * rho / ((1.0 - rho) * (1.0 - rho));
  q.l = r + q.lq;
  q.wq = q.lq / spec.lambda;
  q.w = 1.0 / spec.mu + q.wq;
  return q;
}

MfdEstimate estimate_servers_from_mfd(const std::vector<MfdSample>& samples) {
  if (samples.size() < 10) {
    throw InsufficientDataError("estimate_servers_from_mfd: need >= 10 samples");
  }
  std::set<double> distinct;
  double lo = samples.front().accumulation;
  double hi = lo;
  for (const auto& s : samples) {
    if (s.accumulation < 0.0 || s.production < 0.0) {
      throw std::domain_error("estimate_servers_from_mfd: negative sample");
    }
    distinct.insert(s.accumulation);
    lo = std::min(lo, s.accumulation);
    hi = std::max(hi, s.accumulation);
  }
  if (distinct.size() < 5) {
    throw InsufficientDataError("estimate_servers_from_mfd: need >= 5 distinct accumulation values");
  }

  const double width = std::max(1.0, (hi - lo) / 20.0);
  const int nbins = static_cast<int>(std::floor((hi - lo) / width)) + 1;
  std::vector<double> sum(nbins, 0.0);
  std::vector<long> count(nbins, 0);
  for (const auto& s : samples) {
    int b = static_cast<int>(std::floor((s.accumulation - lo) / width));
    b = std::clamp(b, 0, nbins - 1);
    sum[b] += s.production;
    ++count[b];
  }

  int best = -1;
  int last_nonempty = -1;
  double best_mean = -1.0;
  for (int b = 0; b < nbins; ++b) {
    if (count[b] == 0) continue;
    last_nonempty = b;
    const double mean = sum[b] / count[b];
    if (mean > best_mean) {
      best_mean = mean;
      best = b;
    }
  }

  MfdEstimate est;
  if (best == last_nonempty) {
    // Production never turned over: report the largest observed accumulation.
    est.at_boundary = true;
    est.servers = std::max(1, static_cast<int>(std::lround(hi)));
    return est;
  }
  const double center = lo + (best + 0.5) * width;
  est.servers = std::max(1, static_cast<int>(std::lround(center)));
  return est;
}

}  // namespace taxiq
