#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "ccot/grid.hpp"

namespace ccot {

// Nonnegative mass per grid cell; the discretization of a marginal density.
class DiscreteMarginal {
 public:
  DiscreteMarginal(Grid grid, std::vector<Rational> mass)
      : grid_(std::move(grid)), mass_(std::move(mass)) {
    if (static_cast<int>(mass_.size()) != grid_.num_cells()) {
      throw std::invalid_argument("marginal size does not match grid");
    }
    total_mass_ = 0;
    for (const auto& m : mass_) {
      if (m < 0) throw std::invalid_argument("marginal mass must be nonnegative");
      total_mass_ += m;
    }
  }

  const Grid& grid() const { return grid_; }
  const std::vector<Rational>& mass() const { return mass_; }
  const Rational& mass(int cell) const { return mass_.at(cell); }
  const Rational& total_mass() const { return total_mass_; }
  int size() const { return static_cast<int>(mass_.size()); }

  bool operator==(const DiscreteMarginal& other) const {
    return grid_ == other.grid_ && mass_ == other.mass_;
  }

 private:
  Grid grid_;
  std::vector<Rational> mass_;
  Rational total_mass_;
};

// Every cell carries the cell volume; total mass 1.
inline DiscreteMarginal uniform_marginal(const Grid& grid) {
  std::vector<Rational> mass(grid.num_cells(), grid.cell_volume());
  return DiscreteMarginal(grid, std::move(mass));
}

}  // namespace ccot
