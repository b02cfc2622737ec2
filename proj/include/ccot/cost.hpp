#pragma once

#include <vector>

#include "ccot/grid.hpp"

namespace ccot {

enum class CostKind { NEG_DOT, SQ_DIST, CUSTOM };

// Cost per unit mass between x-cell i and y-cell j, stored dense row-major.
class CostMatrix {
 public:
  CostMatrix(int rows, int cols, std::vector<Rational> entries, CostKind kind);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  CostKind kind() const { return kind_; }
  const Rational& at(int i, int j) const { return entries_[i * cols_ + j]; }
  const std::vector<Rational>& entries() const { return entries_; }

  bool is_symmetric() const;

 private:
  int rows_, cols_;
  std::vector<Rational> entries_;
  CostKind kind_;
};

// NEG_DOT: -<x_i, y_j>. SQ_DIST: |x_i - y_j|^2. Grids must share a dimension.
CostMatrix build_cost(const Grid& grid_x, const Grid& grid_y, CostKind kind);

// Arbitrary entries through the file interface.
CostMatrix custom_cost(int rows, int cols, std::vector<Rational> entries);

}  // namespace ccot
