#include "taxiq/flow_balance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "taxiq/errors.hpp"
#include "taxiq/simplex.hpp"

namespace taxiq {

namespace {

double passenger_side(const ZoneParams& p, Service s) {
  return s == Service::ats ? p.p_ats * p.lambda_p : (1.0 - p.p_ats) * p.lambda_p;
}

double vehicle_side(const ZoneParams& p, Service s, double f_in) {
  return s == Service::ats ? p.lambda_v_ats + f_in * p.p_pick_ats
                           : p.lambda_v_tts + f_in * p.p_pick_tts;
}

double pass_through(const ZoneParams& p) { return 1.0 - p.p_pick_ats - p.p_pick_tts; }

}  // namespace

double inflow_weight(const NetworkConfig& config, std::size_t from, std::size_t to) {
  if (config.adj(from, to) == 0) return 0.0;
  double w = 0.0;
  for (int k = 0; k < kVehicleClassCount; ++k) {
    w += config.params[from].portions[k] * config.routing.by_class[k].at(from, to);
  }
  return w;
}

std::vector<double> flow_map(const NetworkConfig& config, const std::vector<double>& f_in) {
  const std::size_t n = config.size();
  if (f_in.size() != n) throw std::invalid_argument("flow_map: f_in size mismatch");
  std::vector<double> f_out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const ZoneParams& p = config.params[i];
    const double pv_ats = std::min(vehicle_side(p, Service::ats, f_in[i]), passenger_side(p, Service::ats));
    const double pv_tts = std::min(vehicle_side(p, Service::tts, f_in[i]), passenger_side(p, Service::tts));
    f_out[i] = pv_ats + pv_tts + pass_through(p) * f_in[i];
  }
  std::vector<double> next(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += inflow_weight(config, j, i) * f_out[j];
    }
    next[i] = sum;
  }
  return next;
}

void effective_rates(const NetworkConfig& config, FlowSolution& solution) {
  const std::size_t n = config.size();
  if (solution.f_in.size() != n) throw std::invalid_argument("effective_rates: f_in size mismatch");
  solution.lambda_pv_ats.assign(n, 0.0);
  solution.lambda_pv_tts.assign(n, 0.0);
  solution.lambda_hat_v_ats.assign(n, 0.0);
  solution.lambda_hat_v_tts.assign(n, 0.0);
  solution.f_out.assign(n, 0.0);
  solution.lambda_road.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const ZoneParams& p = config.params[i];
    const double f = solution.f_in[i];
    solution.lambda_hat_v_ats[i] = vehicle_side(p, Service::ats, f);
    solution.lambda_hat_v_tts[i] = vehicle_side(p, Service::tts, f);
    solution.lambda_pv_ats[i] = std::min(solution.lambda_hat_v_ats[i], passenger_side(p, Service::ats));
    solution.lambda_pv_tts[i] = std::min(solution.lambda_hat_v_tts[i], passenger_side(p, Service::tts));
    solution.f_out[i] = solution.lambda_pv_ats[i] + solution.lambda_pv_tts[i] + pass_through(p) * f;
    solution.lambda_road[i] = solution.f_out[i];
  }
}

FlowSolution solve_fixed_point(const NetworkConfig& config, const FixedPointOptions& options) {
  const std::size_t n = config.size();
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    throw std::invalid_argument("solve_fixed_point: damping must lie in (0, 1]");
  }
  std::vector<double> f = options.initial.empty() ? std::vector<double>(n, 0.0) : options.initial;
  if (f.size() != n) throw std::invalid_argument("solve_fixed_point: initial size mismatch");

  double residual = 0.0;
  long iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    const std::vector<double> next = flow_map(config, f);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual = std::max(residual, std::fabs(next[i] - f[i]));
    }
    if (residual < options.tolerance) break;
    for (std::size_t i = 0; i < n; ++i) {
      f[i] += options.damping * (next[i] - f[i]);
    }
  }
  if (iter >= options.max_iterations) {
    throw NonConvergenceError("solve_fixed_point: no fixed point within iteration budget "
                              "(insufficient exit leakage?)",
                              residual, iter);
  }

  FlowSolution solution;
  solution.f_in = std::move(f);
  effective_rates(config, solution);
  solution.method = "fixed-point";
  solution.iterations = iter + 1;
  solution.residual = residual;
  solution.converged = true;
  return solution;
}

FlowSolution solve_lp(const NetworkConfig& config) {
  const std::size_t n = config.size();
  // Variables: [pv_ats_0.., pv_tts_0.., f_in_0..].
  LinearProgram lp;
  lp.num_vars = static_cast<int>(3 * n);
  lp.objective.assign(lp.num_vars, 0.0);
  for (std::size_t i = 0; i < 2 * n; ++i) lp.objective[i] = 1.0;

  auto var_ats = [&](std::size_t i) { return static_cast<int>(i); };
  auto var_tts = [&](std::size_t i) { return static_cast<int>(n + i); };
  auto var_f = [&](std::size_t i) { return static_cast<int>(2 * n + i); };

  for (std::size_t i = 0; i < n; ++i) {
    const ZoneParams& p = config.params[i];
    // Vehicle-side cap: pv <= lambda_v + p_pick * f_in.
    std::vector<double> row(lp.num_vars, 0.0);
    row[var_ats(i)] = 1.0;
    row[var_f(i)] = -p.p_pick_ats;
    lp.a_ub.push_back(row);
    lp.b_ub.push_back(p.lambda_v_ats);

    row.assign(lp.num_vars, 0.0);
    row[var_tts(i)] = 1.0;
    row[var_f(i)] = -p.p_pick_tts;
    lp.a_ub.push_back(row);
    lp.b_ub.push_back(p.lambda_v_tts);

    // Passenger-side cap.
    row.assign(lp.num_vars, 0.0);
    row[var_ats(i)] = 1.0;
    lp.a_ub.push_back(row);
    lp.b_ub.push_back(passenger_side(p, Service::ats));

    row.assign(lp.num_vars, 0.0);
    row[var_tts(i)] = 1.0;
    lp.a_ub.push_back(row);
    lp.b_ub.push_back(passenger_side(p, Service::tts));
  }
  // Through-flow identity: f_in_i = sum_j w(j,i) (pv_ats_j + pv_tts_j + pass_j f_in_j).
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(lp.num_vars, 0.0);
    row[var_f(i)] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = inflow_weight(config, j, i);
      if (w == 0.0) continue;
      row[var_ats(j)] -= w;
      row[var_tts(j)] -= w;
      row[var_f(j)] -= w * pass_through(config.params[j]);
    }
    lp.a_eq.push_back(row);
    lp.b_eq.push_back(0.0);
  }

  const LpSolution sol = solve_simplex(lp);

  FlowSolution solution;
  solution.f_in.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) solution.f_in[i] = sol.x[var_f(i)];
  effective_rates(config, solution);
  solution.method = "lp";
  solution.iterations = 0;
  solution.residual = 0.0;
  solution.converged = true;
  return solution;
}

}  // namespace taxiq
