#pragma once

#include <string>
#include <vector>

#include "taxiq/network.hpp"

namespace taxiq {

// Steady-state flow rates per zone, all per minute.
struct FlowSolution {
  std::vector<double> lambda_pv_ats;  // matched-pair formation rates
  std::vector<double> lambda_pv_tts;
  std::vector<double> lambda_hat_v_ats;  // vehicle-side arrival rates incl. through pickups
  std::vector<double> lambda_hat_v_tts;
  std::vector<double> f_in;   // through-flow arriving from other zones
  std::vector<double> f_out;  // departure flow of the road node
  std::vector<double> lambda_road;  // road-node arrival rate (equals f_out)

  std::string method;  // "fixed-point" or "lp"
  long iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Probability-weighted share of zone `from`'s departure flow that arrives at
// zone `to`: adjacency-masked sum over classes of portion * routing entry.
double inflow_weight(const NetworkConfig& config, std::size_t from, std::size_t to);

// One balance sweep: given candidate through-flows f_in, returns the
// through-flows implied by the induced departure flows. The network
// steady state is a fixed point of this map.
std::vector<double> flow_map(const NetworkConfig& config, const std::vector<double>& f_in);

struct FixedPointOptions {
  double tolerance = 1e-9;       // sup-norm on the undamped residual
  long max_iterations = 100000;
  double damping = 1.0;          // step fraction in (0, 1]
  std::vector<double> initial;   // empty means all zeros
};

// Damped Picard iteration on flow_map. Throws NonConvergenceError (carrying
// the final residual) when the iteration budget runs out.
FlowSolution solve_fixed_point(const NetworkConfig& config, const FixedPointOptions& options = {});

// Same steady state posed as a linear program: maximize total matched-pair
// throughput subject to the vehicle- and passenger-side caps and the
// through-flow identity. Cross-check for the fixed point.
FlowSolution solve_lp(const NetworkConfig& config);

// Fills every dependent field of `solution` from config and solution.f_in.
void effective_rates(const NetworkConfig& config, FlowSolution& solution);

}  // namespace taxiq
