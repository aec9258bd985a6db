#include "taxiq/simplex.hpp"

#include <cmath>
#include <stdexcept>

#include "taxiq/errors.hpp"

namespace taxiq {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kFeasTol = 1e-8;
constexpr long kMaxPivots = 200000;

struct Tableau {
  // rows of the constraint system, each of width ncols (last entry is RHS)
  std::vector<std::vector<double>> rows;
  std::vector<double> zrow;  // reduced costs z_j - c_j, plus -objective in the RHS slot
  std::vector<int> basis;    // basic column per row
  int ncols = 0;

  void pivot(int r, int c) {
    auto& prow = rows[r];
    const double p = prow[c];
    for (int j = 0; j < ncols; ++j) prow[j] /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      const double f = rows[i][c];
      if (f == 0.0) continue;
      for (int j = 0; j < ncols; ++j) rows[i][j] -= f * prow[j];
    }
    const double fz = zrow[c];
    if (fz != 0.0) {
      for (int j = 0; j < ncols; ++j) zrow[j] -= fz * prow[j];
    }
    basis[r] = c;
  }

  // Bland: entering column is the lowest index with zrow < -eps among
  // `allowed` columns; leaving row is the lowest-ratio row, ties broken by
  // smallest basis column. Returns false at optimality.
  bool step(int allowed_cols) {
    int enter = -1;
    for (int j = 0; j < allowed_cols; ++j) {
      if (zrow[j] < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    double best = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double a = rows[i][enter];
      if (a <= kPivotEps) continue;
      const double ratio = rows[i][ncols - 1] / a;
      if (leave < 0 || ratio < best - kPivotEps ||
          (std::fabs(ratio - best) <= kPivotEps && basis[i] < basis[leave])) {
        leave = static_cast<int>(i);
        best = ratio;
      }
    }
    if (leave < 0) {
      throw UnboundedObjectiveError("simplex: objective unbounded above");
    }
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LpSolution solve_simplex(const LinearProgram& lp) {
  const int nv = lp.num_vars;
  if (nv <= 0 || static_cast<int>(lp.objective.size()) != nv) {
    throw std::invalid_argument("solve_simplex: bad objective size");
  }
  const int n_ub = static_cast<int>(lp.a_ub.size());
  const int n_eq = static_cast<int>(lp.a_eq.size());
  if (static_cast<int>(lp.b_ub.size()) != n_ub || static_cast<int>(lp.b_eq.size()) != n_eq) {
    throw std::invalid_argument("solve_simplex: constraint shape mismatch");
  }

  // Column layout: [structural | one slack or surplus per ub row | one
  // artificial per row needing it | RHS].
  const int m = n_ub + n_eq;
  std::vector<int> art_of_row(m, -1);
  int n_art = 0;
  // ub rows with negative rhs get flipped to >= and need an artificial;
  // equality rows always need one.
  for (int i = 0; i < n_ub; ++i) {
    if (lp.b_ub[i] < 0.0) art_of_row[i] = n_art++;
  }
  for (int i = 0; i < n_eq; ++i) art_of_row[n_ub + i] = n_art++;

  const int slack0 = nv;
  const int art0 = nv + n_ub;
  const int ncols = nv + n_ub + n_art + 1;

  Tableau t;
  t.ncols = ncols;
  t.rows.assign(m, std::vector<double>(ncols, 0.0));
  t.zrow.assign(ncols, 0.0);
  t.basis.assign(m, -1);

  for (int i = 0; i < n_ub; ++i) {
    if (static_cast<int>(lp.a_ub[i].size()) != nv) {
      throw std::invalid_argument("solve_simplex: a_ub row size mismatch");
    }
    const double sign = lp.b_ub[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < nv; ++j) t.rows[i][j] = sign * lp.a_ub[i][j];
    t.rows[i][slack0 + i] = sign;  // slack, or surplus when the row was flipped
    t.rows[i][ncols - 1] = sign * lp.b_ub[i];
    if (art_of_row[i] >= 0) {
      t.rows[i][art0 + art_of_row[i]] = 1.0;
      t.basis[i] = art0 + art_of_row[i];
    } else {
      t.basis[i] = slack0 + i;
    }
  }
  for (int i = 0; i < n_eq; ++i) {
    if (static_cast<int>(lp.a_eq[i].size()) != nv) {
      throw std::invalid_argument("solve_simplex: a_eq row size mismatch");
    }
    const int r = n_ub + i;
    const double sign = lp.b_eq[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < nv; ++j) t.rows[r][j] = sign * lp.a_eq[i][j];
    t.rows[r][ncols - 1] = sign * lp.b_eq[i];
    t.rows[r][art0 + art_of_row[r]] = 1.0;
    t.basis[r] = art0 + art_of_row[r];
  }

  // Phase 1: maximize -sum(artificials). With artificials basic, the reduced
  // cost row is -sum of their rows over non-artificial columns.
  if (n_art > 0) {
    for (int i = 0; i < m; ++i) {
      if (art_of_row[i] < 0) continue;
      for (int j = 0; j < ncols; ++j) {
        if (j >= art0 && j < ncols - 1) continue;
        t.zrow[j] -= t.rows[i][j];
      }
    }
    long pivots = 0;
    while (t.step(art0)) {
      if (++pivots > kMaxPivots) throw std::runtime_error("simplex: phase 1 pivot budget exhausted");
    }
    if (t.zrow[ncols - 1] < -kFeasTol) {
      throw InfeasibleError("simplex: constraints are infeasible");
    }
    // Drive residual artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < art0) continue;
      int c = -1;
      for (int j = 0; j < art0; ++j) {
        if (std::fabs(t.rows[i][j]) > kPivotEps) {
          c = j;
          break;
        }
      }
      if (c >= 0) t.pivot(i, c);
      // A fully zero row is a redundant constraint; its artificial stays
      // basic at value zero and never re-enters.
    }
  }

  // Phase 2: rebuild reduced costs for the true objective.
  std::vector<double> cost(ncols, 0.0);
  for (int j = 0; j < nv; ++j) cost[j] = lp.objective[j];
  for (int j = 0; j < ncols; ++j) t.zrow[j] = -cost[j];
  for (int i = 0; i < m; ++i) {
    const double cb = t.basis[i] < ncols ? cost[t.basis[i]] : 0.0;
    if (cb == 0.0) continue;
    for (int j = 0; j < ncols; ++j) t.zrow[j] += cb * t.rows[i][j];
  }
  long pivots = 0;
  while (t.step(art0)) {
    if (++pivots > kMaxPivots) throw std::runtime_error("simplex: phase 2 pivot budget exhausted");
  }

  LpSolution sol;
  sol.x.assign(nv, 0.0);
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < nv) sol.x[t.basis[i]] = t.rows[i][ncols - 1];
  }
  sol.objective = 0.0;
  for (int j = 0; j < nv; ++j) sol.objective += lp.objective[j] * sol.x[j];
  return sol;
}

}  // namespace taxiq
