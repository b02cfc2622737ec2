#pragma once

#include <vector>

#include "ccot/rational.hpp"

namespace ccot {

// Domain of a grid. Both boxes have unit volume; CENTERED is symmetric
// around the origin, which is what the balanced-set constructions need.
enum class Domain { CENTERED, UNIT };

// Uniform axis-aligned partition of a d-dimensional unit-volume box into
// n cells per axis. Cells are addressed by a flat row-major index.
class Grid {
 public:
  Grid(int dimension, int cells_per_axis, Domain domain);

  int dimension() const { return dimension_; }
  int cells_per_axis() const { return cells_per_axis_; }
  Domain domain() const { return domain_; }

  // n^d, the number of cells (and the flat index range).
  int num_cells() const { return num_cells_; }

  // (1/n)^d, identical for every cell.
  const Rational& cell_volume() const { return cell_volume_; }

  // Midpoint coordinate of cell index i along one axis.
  const Rational& axis_midpoint(int i) const { return axis_midpoints_.at(i); }

  // Midpoint of the cell with flat index `cell`, one coordinate per axis.
  std::vector<Rational> midpoint(int cell) const;

  // Flat index with the last axis varying fastest.
  int flat_index(const std::vector<int>& multi) const;

  // Flat index of the cell whose midpoint is the coordinatewise negation
  // of cell's midpoint. On CENTERED grids this is an involution of the
  // index range (per-axis reversal i -> n-1-i).
  int reflect_index(int cell) const;

  bool operator==(const Grid& other) const {
    return dimension_ == other.dimension_ &&
           cells_per_axis_ == other.cells_per_axis_ &&
           domain_ == other.domain_;
  }

 private:
  int dimension_;
  int cells_per_axis_;
  Domain domain_;
  int num_cells_;
  Rational cell_volume_;
  std::vector<Rational> axis_midpoints_;
};

// d in {1,2}, n >= 1.
Grid build_grid(int dimension, int cells_per_axis, Domain domain);

}  // namespace ccot
