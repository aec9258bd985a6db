#pragma once

#include <vector>

namespace taxiq {

// Dense linear program in the form
//   maximize objective . x
//   subject to a_ub x <= b_ub, a_eq x = b_eq, x >= 0.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> a_ub;
  std::vector<double> b_ub;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
};

struct LpSolution {
  std::vector<double> x;
  double objective = 0.0;
};

// Two-phase primal simplex on a dense tableau, Bland's rule throughout.
// Intended for small problems (a few hundred variables). Throws
// InfeasibleError or UnboundedObjectiveError.
LpSolution solve_simplex(const LinearProgram& lp);

}  // namespace taxiq
