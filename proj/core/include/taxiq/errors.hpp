#pragma once

#include <stdexcept>
#include <string>

namespace taxiq {

// Queue or network asked for steady-state quantities outside the stability
// region (utilization >= 1 somewhere).
struct NotStableError : std::domain_error {
  explicit NotStableError(const std::string& what) : std::domain_error(what) {}
};

// Iterative solver hit its iteration budget before reaching tolerance.
struct NonConvergenceError : std::runtime_error {
  NonConvergenceError(const std::string& what, double residual_, long iterations_)
      : std::runtime_error(what), residual(residual_), iterations(iterations_) {}
  double residual;
  long iterations;
};

// Estimator preconditions on sample size or support were not met.
struct InsufficientDataError : std::invalid_argument {
  explicit InsufficientDataError(const std::string& what) : std::invalid_argument(what) {}
};

// Requested state enumeration exceeds the configured cell budget.
struct StateSpaceTooLargeError : std::invalid_argument {
  explicit StateSpaceTooLargeError(const std::string& what) : std::invalid_argument(what) {}
};

// LP has a feasible ray of improving objective.
struct UnboundedObjectiveError : std::runtime_error {
  explicit UnboundedObjectiveError(const std::string& what) : std::runtime_error(what) {}
};

// LP constraints admit no feasible point.
struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file. `line` is 1-based; 0 means not line-addressable.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, long line_ = 0)
      : std::runtime_error(what), line(line_) {}
  long line;
};

// Time window selects no minutes.
struct EmptyWindowError : std::invalid_argument {
  explicit EmptyWindowError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace taxiq
