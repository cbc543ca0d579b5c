#pragma once

// Dyadic Hausdorff content of cell sets.
//
// The content of E at dimension d is the least Σ ℓ(Q)^d over covers of E by
// dyadic cubes of the ambient tree (levels 0..L). A bottom-up pass computes
// it exactly: an empty subtree costs 0, an occupied leaf ℓ^d, and an inner
// cube min(ℓ(Q)^d, Σ children). Ties prefer the single larger cube, so the
// witness is the coarsest optimal antichain.

#include <cstddef>
#include <span>
#include <vector>

#include "choquet/grid.hpp"

namespace choquet {

struct ContentValue {
  double value = 0.0;
  /// Pairwise disjoint cubes covering exactly the occupied cells, with
  /// Σ ℓ^d = value. Empty for the empty set.
  std::vector<DyadicCube> witness;
};

/// Per-cube content table of one cell set: entry at Q is the content of
/// E ∩ Q. Also supports switching cells on one at a time, which updates the
/// ancestor chain with the same formula the full pass uses (so both routes
/// give bitwise identical tables).
class ContentTree {
 public:
  ContentTree(GridShape shape, double d);

  /// Recompute every level from the given occupancy.
  void build(const CellSet& set);
  /// Mark a cell occupied and refresh its ancestors. O(L).
  void insert(std::size_t cell) {
    insert_with(cell, [](int, std::size_t, double) {});
  }
  /// As insert; on_change(level, flat, old_value) fires for every entry
  /// whose value changes, leaf first.
  template <typename OnChange>
  void insert_with(std::size_t cell, OnChange&& on_change);
  void clear();

  const GridShape& shape() const { return shape_; }
  double dimension() const { return d_; }
  double root() const { return levels_[0][0]; }
  double at(const DyadicCube& q) const { return levels_.at(q.level).at(q.flat()); }
  std::span<const double> level(int k) const { return levels_.at(k); }
  /// ℓ^d for a cube at level k.
  double cap(int k) const { return caps_.at(k); }

  std::vector<DyadicCube> witness() const;

 private:
  void reduce_level(int k);
  double recompute(int k, std::size_t r, std::size_t c) const;
  void collect(int k, std::size_t flat, std::vector<DyadicCube>& out) const;

  GridShape shape_;
  double d_;
  std::vector<double> caps_;
  std::vector<std::vector<double>> levels_;
  std::vector<double> scratch_;
};

template <typename OnChange>
void ContentTree::insert_with(std::size_t cell, OnChange&& on_change) {
  const int L = shape_.depth;
  if (levels_[L].at(cell) != 0.0) return;
  on_change(L, cell, 0.0);
  levels_[L][cell] = caps_[L];
  std::size_t r = 0;
  std::size_t c = cell;
  if (shape_.dim == 2) {
    r = cell / shape_.side();
    c = cell % shape_.side();
  }
  for (int k = L - 1; k >= 0; --k) {
    r >>= 1;
    c >>= 1;
    const std::size_t flat = shape_.dim == 1 ? c : (r << k) + c;
    const double v = recompute(k, r, c);
    const double old = levels_[k][flat];
    if (v == old) break;
    on_change(k, flat, old);
    levels_[k][flat] = v;
  }
}

/// Throws ParameterError unless 0 < d ≤ n.
void validate_content_dimension(double d, int dim);

/// Exact minimum over dyadic antichain covers. For d = n the value is the
/// cell count times 2^{-nL} (Lebesgue measure), computed by counting.
ContentValue dyadic_content(const CellSet& set, double d, bool with_witness = true);

/// Content of set ∩ Q for every dyadic cube Q in one pass.
ContentTree subtree_contents(const CellSet& set, double d);

/// Exhaustive minimum over all antichains of the tree; grids of at most 16
/// cells only (CapacityError otherwise). Test oracle for dyadic_content.
double content_bruteforce(const CellSet& set, double d);

/// Σ ℓ(Q)^d over a list of cubes.
double cover_cost(std::span<const DyadicCube> cubes, double d);

}  // namespace choquet
