#include "taxiq/validate.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <set>

namespace taxiq {

namespace {

constexpr double kSumTolerance = 1e-9;

std::string format(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

const char* class_name(int k) {
  switch (static_cast<VehicleClass>(k)) {
    case VehicleClass::occupied_ats: return "occupied_ats";
    case VehicleClass::empty_ats: return "empty_ats";
    case VehicleClass::occupied_tts: return "occupied_tts";
    case VehicleClass::empty_tts: return "empty_tts";
  }
  return "?";
}

}  // namespace

ValidationReport validate_network(const NetworkConfig& config) {
  ValidationReport report;
  auto error = [&](std::string code, std::string message) {
    report.findings.push_back({Severity::error, std::move(code), std::move(message)});
  };
  auto warning = [&](std::string code, std::string message) {
    report.findings.push_back({Severity::warning, std::move(code), std::move(message)});
  };

  const std::size_t n = config.zones.size();

  if (config.schema_version != 1) {
    error("schema.version", format("unsupported schema_version %d", config.schema_version));
  }
  if (n == 0) {
    error("zones.empty", "config declares no zones");
    return report;
  }

  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (config.zones[i].value.empty()) {
      error("zones.id_empty", format("zone %zu has an empty id", i));
    } else if (!seen.insert(config.zones[i].value).second) {
      error("zones.id_duplicate", format("duplicate zone id '%s'", config.zones[i].value.c_str()));
    }
  }

  if (config.adjacency.size() != n * n) {
    error("adjacency.shape", format("adjacency has %zu entries, expected %zu", config.adjacency.size(), n * n));
    return report;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const int a = config.adj(i, j);
      if (a != 0 && a != 1) {
        error("adjacency.entry", format("adjacency(%zu,%zu) = %d, must be 0 or 1", i, j, a));
      }
    }
    if (!config.allow_self_loops && config.adj(i, i) != 0) {
      error("adjacency.self_loop",
            format("zone '%s' has a self loop and allow_self_loops is off", config.zones[i].value.c_str()));
    }
  }

  if (config.params.size() != n) {
    error("params.shape", format("params has %zu entries, expected %zu", config.params.size(), n));
    return report;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const ZoneParams& p = config.params[i];
    const char* zid = config.zones[i].value.c_str();
    auto rate = [&](double v, const char* name) {
      if (v < 0.0 || !std::isfinite(v)) {
        error("params.rate", format("zone '%s': %s = %g, must be a finite rate >= 0", zid, name, v));
      }
    };
    rate(p.lambda_p, "lambda_p");
    rate(p.lambda_v_ats, "lambda_v_ats");
    rate(p.lambda_v_tts, "lambda_v_tts");
    rate(p.mu_ats, "mu_ats");
    rate(p.mu_tts, "mu_tts");
    rate(p.mu_road, "mu_road");
    if (p.c_road < 1) {
      error("params.c_road", format("zone '%s': c_road = %d, must be >= 1", zid, p.c_road));
    }
    auto prob = [&](double v, const char* name) {
      if (!(v >= 0.0 && v <= 1.0)) {
        error("params.probability", format("zone '%s': %s = %g, must lie in [0,1]", zid, name, v));
      }
    };
    prob(p.p_ats, "p_ats");
    prob(p.p_pick_ats, "p_pick_ats");
    prob(p.p_pick_tts, "p_pick_tts");
    if (p.p_pick_ats + p.p_pick_tts > 1.0 + kSumTolerance) {
      error("params.pickup_sum",
            format("zone '%s': p_pick_ats + p_pick_tts = %.12g exceeds 1", zid, p.p_pick_ats + p.p_pick_tts));
    }
    double portion_sum = 0.0;
    for (int k = 0; k < kVehicleClassCount; ++k) {
      prob(p.portions[k], class_name(k));
      portion_sum += p.portions[k];
    }
    if (std::fabs(portion_sum - 1.0) > kSumTolerance) {
      error("params.portion_sum", format("zone '%s': class portions sum to %.12g, must be 1", zid, portion_sum));
    }
    if (p.mu_ats == 0.0 || p.mu_tts == 0.0) {
      warning("params.zero_match_rate", format("zone '%s': a matching service rate is 0", zid));
    }
    if (p.mu_road == 0.0) {
      warning("params.zero_road_rate", format("zone '%s': mu_road is 0", zid));
    }
  }

  for (int k = 0; k < kVehicleClassCount; ++k) {
    const Matrix& m = config.routing.by_class[k];
    if (m.rows != n || m.cols != n + 1) {
      error("routing.shape",
            format("routing matrix %s is %zux%zu, expected %zux%zu", class_name(k), m.rows, m.cols, n, n + 1));
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j <= n; ++j) {
        const double v = m.at(i, j);
        if (!(v >= 0.0 && v <= 1.0)) {
          error("routing.entry",
                format("routing %s(%s -> col %zu) = %g, must lie in [0,1]", class_name(k),
                       config.zones[i].value.c_str(), j, v));
        }
        if (j < n && v > 0.0 && config.adj(i, j) == 0) {
          error("routing.support",
                format("routing %s gives mass %g to non-adjacent pair %s -> %s", class_name(k),
                       config.zones[i].value.c_str(), config.zones[j].value.c_str(), v));
        }
        sum += v;
      }
      if (std::fabs(sum - 1.0) > kSumTolerance) {
        error("routing.row_sum", format("routing %s row %s sums to %.12g, must be 1", class_name(k),
                                        config.zones[i].value.c_str(), sum));
      }
    }
  }

  bool any_exit = false;
  for (std::size_t i = 0; i < n && !any_exit; ++i) {
    if (config.routing.by_class[0].rows == n && weighted_exit_mass(config, i) > 0.0) any_exit = true;
  }
  if (!any_exit) {
    warning("routing.no_exit", "no zone has exit mass; flow balance may not converge");
  }

  return report;
}

}  // namespace taxiq
