#include "ccot/cost.hpp"

#include <stdexcept>

namespace ccot {

CostMatrix::CostMatrix(int rows, int cols, std::vector<Rational> entries,
                       CostKind kind)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), kind_(kind) {
  if (rows < 1 || cols < 1 ||
      entries_.size() != static_cast<size_t>(rows) * cols) {
    throw std::invalid_argument("cost matrix shape mismatch");
  }
}

bool CostMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i + 1; j < cols_; ++j) {
      if (at(i, j) != at(j, i)) return false;
    }
  }
  return true;
}

CostMatrix build_cost(const Grid& grid_x, const Grid& grid_y, CostKind kind) {
  if (grid_x.dimension() != grid_y.dimension()) {
    throw std::invalid_argument("cost grids must have equal dimension");
  }
  if (kind == CostKind::CUSTOM) {
    throw std::invalid_argument("custom costs take explicit entries");
  }
  const int rows = grid_x.num_cells();
  const int cols = grid_y.num_cells();
  std::vector<Rational> entries;
  entries.reserve(static_cast<size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    const auto x = grid_x.midpoint(i);
    for (int j = 0; j < cols; ++j) {
      const auto y = grid_y.midpoint(j);
      Rational value = 0;
      for (int k = 0; k < grid_x.dimension(); ++k) {
        if (kind == CostKind::NEG_DOT) {
          value -= x[k] * y[k];
        } else {
          const Rational diff = x[k] - y[k];
          value += diff * diff;
        }
      }
      entries.push_back(std::move(value));
    }
  }
  return CostMatrix(rows, cols, std::move(entries), kind);
}

CostMatrix custom_cost(int rows, int cols, std::vector<Rational> entries) {
  return CostMatrix(rows, cols, std::move(entries), CostKind::CUSTOM);
}

}  // namespace ccot
