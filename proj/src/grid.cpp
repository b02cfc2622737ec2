#include "ccot/grid.hpp"

#include <stdexcept>

namespace ccot {

Grid::Grid(int dimension, int cells_per_axis, Domain domain)
    : dimension_(dimension), cells_per_axis_(cells_per_axis), domain_(domain) {
  if (dimension != 1 && dimension != 2) {
    throw std::invalid_argument("grid dimension must be 1 or 2");
  }
  if (cells_per_axis < 1) {
    throw std::invalid_argument("grid needs at least one cell per axis");
  }
  num_cells_ = 1;
  for (int k = 0; k < dimension; ++k) num_cells_ *= cells_per_axis;
  cell_volume_ = make_rational(1);
  for (int k = 0; k < dimension; ++k) cell_volume_ /= cells_per_axis;

  const long long n = cells_per_axis;
  axis_midpoints_.reserve(cells_per_axis);
  for (long long i = 0; i < n; ++i) {
    if (domain == Domain::CENTERED) {
      axis_midpoints_.push_back(make_rational(2 * i + 1 - n, 2 * n));
    } else {
      axis_midpoints_.push_back(make_rational(2 * i + 1, 2 * n));
    }
  }
}

std::vector<Rational> Grid::midpoint(int cell) const {
  if (cell < 0 || cell >= num_cells_) {
    throw std::out_of_range("cell index out of range");
  }
  std::vector<Rational> point(dimension_);
  for (int k = dimension_ - 1; k >= 0; --k) {
    point[k] = axis_midpoints_[cell % cells_per_axis_];
    cell /= cells_per_axis_;
  }
  return point;
}

int Grid::flat_index(const std::vector<int>& multi) const {
  if (static_cast<int>(multi.size()) != dimension_) {
    throw std::invalid_argument("multi-index has wrong dimension");
  }
  int flat = 0;
  for (int k = 0; k < dimension_; ++k) {
    if (multi[k] < 0 || multi[k] >= cells_per_axis_) {
      throw std::out_of_range("multi-index out of range");
    }
    flat = flat * cells_per_axis_ + multi[k];
  }
  return flat;
}

int Grid::reflect_index(int cell) const {
  // Row-major full reversal reverses every axis at once.
  return num_cells_ - 1 - cell;
}

Grid build_grid(int dimension, int cells_per_axis, Domain domain) {
  return Grid(dimension, cells_per_axis, domain);
}

}  // namespace ccot
