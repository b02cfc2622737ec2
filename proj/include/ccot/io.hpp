#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ccot/capacity.hpp"
#include "ccot/plan.hpp"

namespace ccot {

// Filename fragment for a density: "3" for whole numbers, "3_2" for 3/2.
std::string density_slug(const Rational& density);

// One row per cell pair, row-major, header
//   i,j,x_mid,y_mid,mass_num,mass_den,cap_num,cap_den
// with midpoints as reduced rationals (coordinates joined by ';' in d = 2)
// and LF line endings. Byte-deterministic for equal inputs.
void write_plan_csv(const TransportPlan& plan, const CapacityMatrix& capacity,
                    const std::filesystem::path& path);

// Exact inverse of write_plan_csv for the mass columns; insists on the
// header and on every cell pair appearing exactly once.
TransportPlan read_plan_csv(const std::filesystem::path& path,
                            const Grid& grid_x, const Grid& grid_y);

// ASCII PGM (P2), width = y cells, height = x cells, maxval 255:
// 255 = saturated, 128 = partial, 0 = empty. Row r is x index r, top to
// bottom; column is the y index, left to right.
void write_saturation_pgm(const SaturationPattern& pattern,
                          const std::filesystem::path& path);

struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 0;
  std::vector<int> pixels;  // row-major

  int at(int row, int col) const { return pixels[row * width + col]; }
};

PgmImage read_pgm(const std::filesystem::path& path);

}  // namespace ccot
