#include "ccot/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ccot {

namespace {

constexpr const char* kPlanHeader =
    "i,j,x_mid,y_mid,mass_num,mass_den,cap_num,cap_den";

std::string midpoint_field(const Grid& grid, int cell) {
  const auto coordinates = grid.midpoint(cell);
  std::string field = format_rational(coordinates[0]);
  for (size_t axis = 1; axis < coordinates.size(); ++axis) {
    field += ';';
    field += format_rational(coordinates[axis]);
  }
  return field;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char separator) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, separator)) fields.push_back(field);
  if (!line.empty() && line.back() == separator) fields.emplace_back();
  return fields;
}

[[noreturn]] void malformed(const std::filesystem::path& path, size_t line,
                            const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " +
                           what);
}

}  // namespace

std::string density_slug(const Rational& density) {
  std::string slug = numerator(density).str();
  if (denominator(density) != 1) {
    slug += '_';
    slug += denominator(density).str();
  }
  return slug;
}

void write_plan_csv(const TransportPlan& plan, const CapacityMatrix& capacity,
                    const std::filesystem::path& path) {
  if (capacity.rows() != plan.rows() || capacity.cols() != plan.cols()) {
    throw std::invalid_argument("plan and capacity shapes disagree");
  }
  std::ofstream out = open_for_write(path);
  out << kPlanHeader << '\n';
  for (int i = 0; i < plan.rows(); ++i) {
    for (int j = 0; j < plan.cols(); ++j) {
      const Rational& mass = plan.at(i, j);
      const Rational& cap = capacity.at(i, j);
      out << i << ',' << j << ',' << midpoint_field(plan.grid_x(), i) << ','
          << midpoint_field(plan.grid_y(), j) << ',' << numerator(mass) << ','
          << denominator(mass) << ',' << numerator(cap) << ','
          << denominator(cap) << '\n';
    }
  }
  if (!out.flush()) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

TransportPlan read_plan_csv(const std::filesystem::path& path,
                            const Grid& grid_x, const Grid& grid_y) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string() + " for reading");
  }
  std::string line;
  size_t line_number = 1;
  if (!std::getline(in, line) || line != kPlanHeader) {
    malformed(path, line_number, "missing plan header");
  }

  const int rows = grid_x.num_cells(), cols = grid_y.num_cells();
  std::vector<Rational> mass(static_cast<size_t>(rows) * cols);
  std::vector<bool> seen(mass.size(), false);
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 8) malformed(path, line_number, "expected 8 fields");
    int i, j;
    try {
      i = std::stoi(fields[0]);
      j = std::stoi(fields[1]);
    } catch (const std::exception&) {
      malformed(path, line_number, "bad cell index");
    }
    if (i < 0 || i >= rows || j < 0 || j >= cols) {
      malformed(path, line_number, "cell index out of range");
    }
    if (seen[i * cols + j]) malformed(path, line_number, "duplicate cell pair");
    seen[i * cols + j] = true;
    try {
      mass[i * cols + j] =
          make_rational(BigInt(fields[4]), BigInt(fields[5]));
    } catch (const std::exception&) {
      malformed(path, line_number, "bad mass rational");
    }
  }
  for (size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) {
      throw std::runtime_error(path.string() + ": missing cell pair " +
                               std::to_string(k));
    }
  }
  return TransportPlan(grid_x, grid_y, std::move(mass));
}

void write_saturation_pgm(const SaturationPattern& pattern,
                          const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "P2\n" << pattern.cols << ' ' << pattern.rows << "\n255\n";
  for (int i = 0; i < pattern.rows; ++i) {
    for (int j = 0; j < pattern.cols; ++j) {
      if (j > 0) out << ' ';
      switch (pattern.at(i, j)) {
        case CellLabel::SATURATED: out << 255; break;
        case CellLabel::PARTIAL: out << 128; break;
        case CellLabel::EMPTY: out << 0; break;
      }
    }
    out << '\n';
  }
  if (!out.flush()) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

PgmImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string() + " for reading");
  }
  std::string magic;
  PgmImage image;
  if (!(in >> magic) || magic != "P2") {
    throw std::runtime_error(path.string() + ": not an ASCII PGM");
  }
  if (!(in >> image.width >> image.height >> image.maxval) ||
      image.width <= 0 || image.height <= 0 || image.maxval <= 0) {
    throw std::runtime_error(path.string() + ": bad PGM dimensions");
  }
  image.pixels.resize(static_cast<size_t>(image.width) * image.height);
  for (auto& pixel : image.pixels) {
    if (!(in >> pixel) || pixel < 0 || pixel > image.maxval) {
      throw std::runtime_error(path.string() + ": bad PGM pixel");
    }
  }
  return image;
}

}  // namespace ccot
