#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace choquet {

/// Shape of a uniform dyadic grid over [0,1)^dim: 2^depth cells per side.
struct GridShape {
  int dim = 1;
  int depth = 1;

  std::size_t side() const { return std::size_t{1} << depth; }
  std::size_t cells() const { return std::size_t{1} << (dim * depth); }
  double cell_side() const;

  /// Throws ShapeError unless dim ∈ {1,2} and depth is in the supported
  /// range ([1,20] for dim 1, [1,10] for dim 2).
  void validate() const;

  friend bool operator==(const GridShape&, const GridShape&) = default;
};

/// Node of the dyadic tree: side length 2^-level, index[0..dim) in
/// [0, 2^level). For dim 2, index = {row, col} and cells are row-major.
struct DyadicCube {
  int dim = 1;
  int level = 0;
  std::array<std::uint32_t, 2> index{};

  double side() const;
  /// Row-major position among the 2^(dim*level) cubes of its level.
  std::size_t flat() const;
  /// Cell range of this cube on a grid of the given depth (per axis,
  /// half-open).
  std::size_t first_cell(int axis, int depth) const {
    return std::size_t{index[axis]} << (depth - level);
  }
  std::size_t cells_per_axis(int depth) const { return std::size_t{1} << (depth - level); }
  bool contains_cell(std::size_t cell, const GridShape& shape) const;

  static DyadicCube from_flat(int dim, int level, std::size_t flat);
  static DyadicCube root(int dim) { return DyadicCube{dim, 0, {0, 0}}; }

  friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
};

/// Boolean occupancy over the depth-L cells; the argument of the content.
class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(GridShape shape);
  CellSet(GridShape shape, std::vector<std::uint8_t> cells);

  static CellSet empty(GridShape shape) { return CellSet(shape); }
  static CellSet full(GridShape shape);
  static CellSet from_indices(GridShape shape, std::span<const std::size_t> indices);
  static CellSet from_cube(GridShape shape, const DyadicCube& cube);

  const GridShape& shape() const { return shape_; }
  std::size_t size() const { return cells_.size(); }
  bool contains(std::size_t cell) const { return cells_[cell] != 0; }
  void insert(std::size_t cell) { cells_[cell] = 1; }
  void erase(std::size_t cell) { cells_[cell] = 0; }
  std::size_t count() const;
  bool is_empty() const { return count() == 0; }
  std::span<const std::uint8_t> cells() const { return cells_; }
  std::vector<std::size_t> indices() const;

  bool subset_of(const CellSet& other) const;
  CellSet united(const CellSet& other) const;
  CellSet intersected(const CellSet& other) const;

  friend bool operator==(const CellSet&, const CellSet&) = default;

 private:
  GridShape shape_;
  std::vector<std::uint8_t> cells_;
};

/// Non-negative step function, constant on each depth-L cell (row-major).
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(GridShape shape, double fill = 0.0);
  /// Throws ShapeError on a size mismatch and ParameterError on negative or
  /// non-finite values.
  GridFunction(GridShape shape, std::vector<double> values);

  static GridFunction indicator(const CellSet& set, double height = 1.0);

  const GridShape& shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  void set(std::size_t i, double v);

  double max() const;
  bool is_zero() const;
  GridFunction scaled(double c) const;
  GridFunction power(double p) const;
  GridFunction plus(const GridFunction& other) const;

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  GridShape shape_;
  std::vector<double> values_;
};

/// Pointwise product f·χ_E.
GridFunction restrict(const GridFunction& f, const CellSet& set);

/// Center of a cell in [0,1)^dim (first `dim` coordinates used).
std::array<double, 2> cell_center(const GridShape& shape, std::size_t cell);

}  // namespace choquet
