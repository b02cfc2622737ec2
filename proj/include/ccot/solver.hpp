#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccot/plan.hpp"

namespace ccot {

// Sum of f differs from sum of g.
class UnbalancedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The feasible set Gamma(f,g)^u is empty.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance exceeds the brute-force oracle guard.
class InstanceTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveResult {
  TransportPlan plan;
  Rational optimal_value;
  // True when the returned plan is a basic feasible solution, in which case
  // at most rows+cols-1 entries are strictly between their bounds.
  bool is_vertex = false;
  std::int64_t iterations = 0;
  std::string solver;
};

// True iff some plan has marginals (f, g) and respects the capacity bounds,
// decided by an exact max-flow.
bool feasibility_exists(const DiscreteMarginal& f, const DiscreteMarginal& g,
                        const CapacityMatrix& capacity);

// Exact minimum of total_cost over the capacitated transportation polytope,
// via a bounded-variable transportation simplex. Returns a vertex and an
// exact optimal value; optimality is certified against the final potentials.
SolveResult solve(const DiscreteMarginal& f, const DiscreteMarginal& g,
                  const CostMatrix& cost, const CapacityMatrix& capacity);

// Independent oracle for small instances (rows*cols <= 36): starts from a
// max-flow plan and alternates improving four-cell exchanges with residual
// negative-cycle cancellations until neither applies.
SolveResult brute_force_solve(const DiscreteMarginal& f,
                              const DiscreteMarginal& g,
                              const CostMatrix& cost,
                              const CapacityMatrix& capacity);

// Non-certifying float64 path for large-n figure rendering.
struct FloatSolveResult {
  std::vector<double> mass;  // row-major plan entries
  double value = 0.0;
  std::int64_t iterations = 0;
};

FloatSolveResult solve_float64(const DiscreteMarginal& f,
                               const DiscreteMarginal& g,
                               const CostMatrix& cost,
                               const CapacityMatrix& capacity);

}  // namespace ccot
