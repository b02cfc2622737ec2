#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ccot/grid.hpp"

namespace ccot {

// Upper bound on plan mass per cell pair. Built either from a constant
// density (mass bound = density * vol_x * vol_y) or from an explicit
// per-pair density matrix supplied through the file interface.
class CapacityMatrix {
 public:
  CapacityMatrix(int rows, int cols, std::vector<Rational> mass_bounds,
                 std::optional<Rational> constant_density)
      : rows_(rows),
        cols_(cols),
        mass_bounds_(std::move(mass_bounds)),
        constant_density_(std::move(constant_density)) {
    if (rows < 1 || cols < 1 ||
        mass_bounds_.size() != static_cast<size_t>(rows) * cols) {
      throw std::invalid_argument("capacity matrix shape mismatch");
    }
    for (const auto& u : mass_bounds_) {
      if (u < 0) throw std::invalid_argument("capacity bound must be nonnegative");
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Rational& at(int i, int j) const { return mass_bounds_[i * cols_ + j]; }
  const std::vector<Rational>& mass_bounds() const { return mass_bounds_; }

  // Set iff the capacity is a constant density over all cell pairs.
  const std::optional<Rational>& constant_density() const {
    return constant_density_;
  }

 private:
  int rows_, cols_;
  std::vector<Rational> mass_bounds_;
  std::optional<Rational> constant_density_;
};

// Constant density h over the product of the two grids.
inline CapacityMatrix build_capacity(const Grid& grid_x, const Grid& grid_y,
                                     const Rational& density) {
  if (density < 0) throw std::invalid_argument("capacity density must be nonnegative");
  const Rational bound = density * grid_x.cell_volume() * grid_y.cell_volume();
  std::vector<Rational> bounds(
      static_cast<size_t>(grid_x.num_cells()) * grid_y.num_cells(), bound);
  return CapacityMatrix(grid_x.num_cells(), grid_y.num_cells(),
                        std::move(bounds), density);
}

// Per-pair densities; mass bound = density[i][j] * vol_x * vol_y.
inline CapacityMatrix custom_capacity(const Grid& grid_x, const Grid& grid_y,
                                      std::vector<Rational> densities) {
  const Rational pair_volume = grid_x.cell_volume() * grid_y.cell_volume();
  for (auto& d : densities) d *= pair_volume;
  return CapacityMatrix(grid_x.num_cells(), grid_y.num_cells(),
                        std::move(densities), std::nullopt);
}

}  // namespace ccot
