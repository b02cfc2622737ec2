#include "ccot/plan.hpp"

#include <stdexcept>

namespace ccot {

TransportPlan::TransportPlan(Grid grid_x, Grid grid_y,
                             std::vector<Rational> mass)
    : grid_x_(std::move(grid_x)),
      grid_y_(std::move(grid_y)),
      mass_(std::move(mass)) {
  if (mass_.size() !=
      static_cast<size_t>(grid_x_.num_cells()) * grid_y_.num_cells()) {
    throw std::invalid_argument("plan size does not match grids");
  }
  for (const auto& m : mass_) {
    if (m < 0) throw std::invalid_argument("plan mass must be nonnegative");
  }
}

TransportPlan product_plan(const DiscreteMarginal& f,
                           const DiscreteMarginal& g) {
  if (f.total_mass() != g.total_mass()) {
    throw std::invalid_argument("product plan needs balanced marginals");
  }
  if (f.total_mass() == 0) {
    return zero_plan(f.grid(), g.grid());
  }
  std::vector<Rational> mass;
  mass.reserve(static_cast<size_t>(f.size()) * g.size());
  for (int i = 0; i < f.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      mass.push_back(f.mass(i) * g.mass(j) / f.total_mass());
    }
  }
  return TransportPlan(f.grid(), g.grid(), std::move(mass));
}

TransportPlan zero_plan(const Grid& grid_x, const Grid& grid_y) {
  std::vector<Rational> mass(
      static_cast<size_t>(grid_x.num_cells()) * grid_y.num_cells(),
      Rational(0));
  return TransportPlan(grid_x, grid_y, std::move(mass));
}

Rational total_cost(const TransportPlan& plan, const CostMatrix& cost) {
  if (plan.rows() != cost.rows() || plan.cols() != cost.cols()) {
    throw std::invalid_argument("plan and cost shapes disagree");
  }
  Rational sum = 0;
  const auto& m = plan.mass();
  const auto& c = cost.entries();
  for (size_t k = 0; k < m.size(); ++k) {
    if (m[k] != 0) sum += c[k] * m[k];
  }
  return sum;
}

FeasibilityReport check_feasible(const TransportPlan& plan,
                                 const DiscreteMarginal& f,
                                 const DiscreteMarginal& g,
                                 const CapacityMatrix& capacity) {
  if (plan.rows() != f.size() || plan.cols() != g.size() ||
      plan.rows() != capacity.rows() || plan.cols() != capacity.cols()) {
    throw std::invalid_argument("feasibility check shapes disagree");
  }
  FeasibilityReport report;
  report.worst_row_defect = 0;
  report.worst_col_defect = 0;
  report.worst_bound_violation = 0;

  std::vector<Rational> col_sums(plan.cols(), Rational(0));
  for (int i = 0; i < plan.rows(); ++i) {
    Rational row_sum = 0;
    for (int j = 0; j < plan.cols(); ++j) {
      const Rational& m = plan.at(i, j);
      row_sum += m;
      col_sums[j] += m;
      const Rational excess = m - capacity.at(i, j);
      if (excess > report.worst_bound_violation) {
        report.worst_bound_violation = excess;
      }
    }
    Rational defect = abs(row_sum - f.mass(i));
    if (defect > report.worst_row_defect) report.worst_row_defect = defect;
  }
  for (int j = 0; j < plan.cols(); ++j) {
    Rational defect = abs(col_sums[j] - g.mass(j));
    if (defect > report.worst_col_defect) report.worst_col_defect = defect;
  }
  report.is_feasible = report.worst_row_defect == 0 &&
                       report.worst_col_defect == 0 &&
                       report.worst_bound_violation == 0;
  return report;
}

SaturationPattern saturation_pattern(const TransportPlan& plan,
                                     const CapacityMatrix& capacity) {
  return saturation_pattern_tol(plan, capacity, Rational(0));
}

SaturationPattern saturation_pattern_tol(const TransportPlan& plan,
                                         const CapacityMatrix& capacity,
                                         const Rational& tol) {
  if (plan.rows() != capacity.rows() || plan.cols() != capacity.cols()) {
    throw std::invalid_argument("plan and capacity shapes disagree");
  }
  SaturationPattern pattern;
  pattern.rows = plan.rows();
  pattern.cols = plan.cols();
  pattern.labels.reserve(plan.mass().size());
  for (int i = 0; i < plan.rows(); ++i) {
    for (int j = 0; j < plan.cols(); ++j) {
      const Rational& m = plan.at(i, j);
      const Rational& u = capacity.at(i, j);
      CellLabel label;
      if (u > tol && abs(m - u) <= tol) {
        label = CellLabel::SATURATED;
        ++pattern.saturated_count;
      } else if (m <= tol) {
        label = CellLabel::EMPTY;
        ++pattern.empty_count;
      } else {
        label = CellLabel::PARTIAL;
        ++pattern.partial_count;
      }
      pattern.labels.push_back(label);
    }
  }
  return pattern;
}

}  // namespace ccot
