#include "choquet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "choquet/errors.hpp"

namespace choquet {

double GridShape::cell_side() const { return std::exp2(-static_cast<double>(depth)); }

void GridShape::validate() const {
  if (dim != 1 && dim != 2) {
    throw ShapeError("n must be 1 or 2 (got " + std::to_string(dim) + ")");
  }
  const int max_depth = dim == 1 ? 20 : 10;
  if (depth < 1 || depth > max_depth) {
    throw ShapeError("L must be in [1, " + std::to_string(max_depth) + "] for n=" +
                     std::to_string(dim) + " (got " + std::to_string(depth) + ")");
  }
}

double DyadicCube::side() const { return std::exp2(-static_cast<double>(level)); }

std::size_t DyadicCube::flat() const {
  if (dim == 1) return index[0];
  return (std::size_t{index[0]} << level) + index[1];
}

DyadicCube DyadicCube::from_flat(int dim, int level, std::size_t flat) {
  DyadicCube q{dim, level, {0, 0}};
  if (dim == 1) {
    q.index[0] = static_cast<std::uint32_t>(flat);
  } else {
    const std::size_t side = std::size_t{1} << level;
    q.index[0] = static_cast<std::uint32_t>(flat / side);
    q.index[1] = static_cast<std::uint32_t>(flat % side);
  }
  return q;
}

bool DyadicCube::contains_cell(std::size_t cell, const GridShape& shape) const {
  const int shift = shape.depth - level;
  if (shape.dim == 1) return (cell >> shift) == index[0];
  const std::size_t row = cell / shape.side();
  const std::size_t col = cell % shape.side();
  return (row >> shift) == index[0] && (col >> shift) == index[1];
}

CellSet::CellSet(GridShape shape) : shape_(shape) {
  shape_.validate();
  cells_.assign(shape_.cells(), 0);
}

CellSet::CellSet(GridShape shape, std::vector<std::uint8_t> cells)
    : shape_(shape), cells_(std::move(cells)) {
  shape_.validate();
  if (cells_.size() != shape_.cells()) {
    throw ShapeError("cells: expected " + std::to_string(shape_.cells()) + " entries, got " +
                     std::to_string(cells_.size()));
  }
  for (auto& c : cells_) c = c != 0;
}

CellSet CellSet::full(GridShape shape) {
  CellSet s(shape);
  std::fill(s.cells_.begin(), s.cells_.end(), std::uint8_t{1});
  return s;
}

CellSet CellSet::from_indices(GridShape shape, std::span<const std::size_t> indices) {
  CellSet s(shape);
  for (auto i : indices) {
    if (i >= s.size()) throw ShapeError("cell index " + std::to_string(i) + " out of range");
    s.cells_[i] = 1;
  }
  return s;
}

CellSet CellSet::from_cube(GridShape shape, const DyadicCube& cube) {
  CellSet s(shape);
  if (cube.dim != shape.dim || cube.level > shape.depth) {
    throw ShapeError("cube does not belong to this grid");
  }
  const std::size_t w = cube.cells_per_axis(shape.depth);
  if (shape.dim == 1) {
    const std::size_t a = cube.first_cell(0, shape.depth);
    std::fill_n(s.cells_.begin() + static_cast<std::ptrdiff_t>(a), w, std::uint8_t{1});
  } else {
    const std::size_t r0 = cube.first_cell(0, shape.depth);
    const std::size_t c0 = cube.first_cell(1, shape.depth);
    for (std::size_t r = r0; r < r0 + w; ++r) {
      std::fill_n(s.cells_.begin() + static_cast<std::ptrdiff_t>(r * shape.side() + c0), w,
                  std::uint8_t{1});
    }
  }
  return s;
}

std::size_t CellSet::count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> CellSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i]) out.push_back(i);
  }
  return out;
}

namespace {
void require_same_shape(const GridShape& a, const GridShape& b) {
  if (!(a == b)) {
    throw ShapeError("shape mismatch: (n=" + std::to_string(a.dim) + ", L=" +
                     std::to_string(a.depth) + ") vs (n=" + std::to_string(b.dim) +
                     ", L=" + std::to_string(b.depth) + ")");
  }
}
}  // namespace

bool CellSet::subset_of(const CellSet& other) const {
  require_same_shape(shape_, other.shape_);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] && !other.cells_[i]) return false;
  }
  return true;
}

CellSet CellSet::united(const CellSet& other) const {
  require_same_shape(shape_, other.shape_);
  CellSet s = *this;
  for (std::size_t i = 0; i < cells_.size(); ++i) s.cells_[i] |= other.cells_[i];
  return s;
}

CellSet CellSet::intersected(const CellSet& other) const {
  require_same_shape(shape_, other.shape_);
  CellSet s = *this;
  for (std::size_t i = 0; i < cells_.size(); ++i) s.cells_[i] &= other.cells_[i];
  return s;
}

GridFunction::GridFunction(GridShape shape, double fill) : shape_(shape) {
  shape_.validate();
  if (!(fill >= 0.0) || !std::isfinite(fill)) {
    throw ParameterError("values must be finite and non-negative");
  }
  values_.assign(shape_.cells(), fill);
}

GridFunction::GridFunction(GridShape shape, std::vector<double> values)
    : shape_(shape), values_(std::move(values)) {
  shape_.validate();
  if (values_.size() != shape_.cells()) {
    throw ShapeError("values: expected " + std::to_string(shape_.cells()) + " entries, got " +
                     std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
      throw ParameterError("values[" + std::to_string(i) + "] must be finite and non-negative");
    }
  }
}

GridFunction GridFunction::indicator(const CellSet& set, double height) {
  GridFunction f(set.shape());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (set.contains(i)) f.values_[i] = height;
  }
  return f;
}

void GridFunction::set(std::size_t i, double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ParameterError("values must be finite and non-negative");
  }
  values_.at(i) = v;
}

double GridFunction::max() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

GridFunction GridFunction::scaled(double c) const {
  GridFunction g = *this;
  for (auto& v : g.values_) v *= c;
  return g;
}

GridFunction GridFunction::power(double p) const {
  GridFunction g = *this;
  for (auto& v : g.values_) v = v == 0.0 ? 0.0 : std::pow(v, p);
  return g;
}

GridFunction GridFunction::plus(const GridFunction& other) const {
  require_same_shape(shape_, other.shape_);
  GridFunction g = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) g.values_[i] += other.values_[i];
  return g;
}

GridFunction restrict(const GridFunction& f, const CellSet& set) {
  require_same_shape(f.shape(), set.shape());
  std::vector<double> v(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!set.contains(i)) v[i] = 0.0;
  }
  return GridFunction(f.shape(), std::move(v));
}

std::array<double, 2> cell_center(const GridShape& shape, std::size_t cell) {
  const double h = shape.cell_side();
  if (shape.dim == 1) return {(static_cast<double>(cell) + 0.5) * h, 0.0};
  const std::size_t side = shape.side();
  return {(static_cast<double>(cell / side) + 0.5) * h,
          (static_cast<double>(cell % side) + 0.5) * h};
}

}  // namespace choquet
