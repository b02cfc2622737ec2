#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ccot/capacity.hpp"
#include "ccot/cost.hpp"
#include "ccot/grid.hpp"
#include "ccot/marginal.hpp"

namespace ccot {

// Nonnegative mass per cell pair; the discrete transport plan.
class TransportPlan {
 public:
  TransportPlan(Grid grid_x, Grid grid_y, std::vector<Rational> mass);

  const Grid& grid_x() const { return grid_x_; }
  const Grid& grid_y() const { return grid_y_; }
  int rows() const { return grid_x_.num_cells(); }
  int cols() const { return grid_y_.num_cells(); }
  const Rational& at(int i, int j) const { return mass_[i * cols() + j]; }
  const std::vector<Rational>& mass() const { return mass_; }

  bool operator==(const TransportPlan& other) const {
    return grid_x_ == other.grid_x_ && grid_y_ == other.grid_y_ &&
           mass_ == other.mass_;
  }

 private:
  Grid grid_x_, grid_y_;
  std::vector<Rational> mass_;
};

// The outer product f(i)g(j)/total, always marginal-feasible.
TransportPlan product_plan(const DiscreteMarginal& f, const DiscreteMarginal& g);

TransportPlan zero_plan(const Grid& grid_x, const Grid& grid_y);

// Sum of c[i][j] * m[i][j], exact.
Rational total_cost(const TransportPlan& plan, const CostMatrix& cost);

struct FeasibilityReport {
  bool is_feasible = false;
  Rational worst_row_defect;       // max_i |row_sum_i - f_i|
  Rational worst_col_defect;       // max_j |col_sum_j - g_j|
  Rational worst_bound_violation;  // max_ij max(0, m_ij - u_ij)
};

FeasibilityReport check_feasible(const TransportPlan& plan,
                                 const DiscreteMarginal& f,
                                 const DiscreteMarginal& g,
                                 const CapacityMatrix& capacity);

enum class CellLabel : std::uint8_t { EMPTY = 0, PARTIAL = 1, SATURATED = 2 };

// Three-way classification of cell pairs against the capacity bound.
// SATURATED means m = u > 0; EMPTY means m = 0; PARTIAL is everything else.
struct SaturationPattern {
  int rows = 0, cols = 0;
  std::vector<CellLabel> labels;  // row-major
  long long empty_count = 0;
  long long partial_count = 0;
  long long saturated_count = 0;

  CellLabel at(int i, int j) const { return labels[i * cols + j]; }
};

SaturationPattern saturation_pattern(const TransportPlan& plan,
                                     const CapacityMatrix& capacity);

// Tolerance-based variant used by the float64 rendering path: |m-u| <= tol
// counts as saturated and m <= tol as empty. tol = 0 recovers exact labels.
SaturationPattern saturation_pattern_tol(const TransportPlan& plan,
                                         const CapacityMatrix& capacity,
                                         const Rational& tol);

}  // namespace ccot
