#include "choquet/content.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "choquet/errors.hpp"
#include "choquet/simd/kernels.hpp"

namespace choquet {

void validate_content_dimension(double d, int dim) {
  if (!(d > 0.0) || d > static_cast<double>(dim)) {
    throw ParameterError("d must satisfy 0 < d <= n (got d=" + std::to_string(d) +
                         ", n=" + std::to_string(dim) + ")");
  }
}

ContentTree::ContentTree(GridShape shape, double d) : shape_(shape), d_(d) {
  shape_.validate();
  validate_content_dimension(d, shape_.dim);
  caps_.resize(static_cast<std::size_t>(shape_.depth) + 1);
  levels_.resize(caps_.size());
  for (int k = 0; k <= shape_.depth; ++k) {
    caps_[k] = std::exp2(-static_cast<double>(k) * d);
    levels_[k].assign(std::size_t{1} << (shape_.dim * k), 0.0);
  }
  scratch_.resize(shape_.side());
}

void ContentTree::clear() {
  for (auto& lvl : levels_) std::fill(lvl.begin(), lvl.end(), 0.0);
}

void ContentTree::reduce_level(int k) {
  const auto& kern = simd::active_kernels();
  const auto& child = levels_[k + 1];
  auto& parent = levels_[k];
  if (shape_.dim == 1) {
    kern.pair_sum_min(child, parent, caps_[k]);
    return;
  }
  const std::size_t cs = std::size_t{1} << (k + 1);
  const std::size_t ps = cs / 2;
  std::span<double> rowsum(scratch_.data(), cs);
  for (std::size_t r = 0; r < ps; ++r) {
    std::span<const double> top(child.data() + 2 * r * cs, cs);
    std::span<const double> bottom(child.data() + (2 * r + 1) * cs, cs);
    kern.add(top, bottom, rowsum);
    kern.pair_sum_min(rowsum, std::span<double>(parent.data() + r * ps, ps), caps_[k]);
  }
}

void ContentTree::build(const CellSet& set) {
  if (!(set.shape() == shape_)) throw ShapeError("cell set does not match the tree's grid");
  const int L = shape_.depth;
  const double leaf = caps_[L];
  auto cells = set.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) levels_[L][i] = cells[i] ? leaf : 0.0;
  for (int k = L - 1; k >= 0; --k) reduce_level(k);
}

// Same association order as reduce_level: 1D (c0 + c1); 2D
// ((top-left + bottom-left) + (top-right + bottom-right)).
double ContentTree::recompute(int k, std::size_t r, std::size_t c) const {
  const auto& child = levels_[k + 1];
  double s;
  if (shape_.dim == 1) {
    s = child[2 * c] + child[2 * c + 1];
  } else {
    const std::size_t cs = std::size_t{1} << (k + 1);
    const double left = child[2 * r * cs + 2 * c] + child[(2 * r + 1) * cs + 2 * c];
    const double right = child[2 * r * cs + 2 * c + 1] + child[(2 * r + 1) * cs + 2 * c + 1];
    s = left + right;
  }
  return s < caps_[k] ? s : caps_[k];
}

void ContentTree::collect(int k, std::size_t flat, std::vector<DyadicCube>& out) const {
  const double v = levels_[k][flat];
  if (v == 0.0) return;
  if (k == shape_.depth || v == caps_[k]) {
    out.push_back(DyadicCube::from_flat(shape_.dim, k, flat));
    return;
  }
  if (shape_.dim == 1) {
    collect(k + 1, 2 * flat, out);
    collect(k + 1, 2 * flat + 1, out);
    return;
  }
  const std::size_t ps = std::size_t{1} << k;
  const std::size_t r = flat / ps;
  const std::size_t c = flat % ps;
  const std::size_t cs = 2 * ps;
  for (std::size_t dr = 0; dr < 2; ++dr) {
    for (std::size_t dc = 0; dc < 2; ++dc) collect(k + 1, (2 * r + dr) * cs + 2 * c + dc, out);
  }
}

std::vector<DyadicCube> ContentTree::witness() const {
  std::vector<DyadicCube> out;
  collect(0, 0, out);
  return out;
}

ContentValue dyadic_content(const CellSet& set, double d, bool with_witness) {
  const GridShape& shape = set.shape();
  validate_content_dimension(d, shape.dim);
  ContentValue result;
  const bool lebesgue = d == static_cast<double>(shape.dim);
  if (lebesgue) {
    result.value = static_cast<double>(set.count()) *
                   std::exp2(-static_cast<double>(shape.dim * shape.depth));
    if (!with_witness) return result;
  }
  ContentTree tree(shape, d);
  tree.build(set);
  if (!lebesgue) result.value = tree.root();
  if (with_witness) result.witness = tree.witness();
  return result;
}

ContentTree subtree_contents(const CellSet& set, double d) {
  ContentTree tree(set.shape(), d);
  tree.build(set);
  return tree;
}

double cover_cost(std::span<const DyadicCube> cubes, double d) {
  double s = 0.0;
  for (const auto& q : cubes) s += std::exp2(-static_cast<double>(q.level) * d);
  return s;
}

namespace {

// Explicit enumeration of every antichain of the dyadic tree. Node ids are
// assigned level by level; each node carries the bitmask of cells it covers.
struct BruteTree {
  int dim;
  int depth;
  std::vector<int> level_of;
  std::vector<std::uint32_t> cell_mask;
  std::vector<std::vector<int>> children;
};

BruteTree make_brute_tree(const GridShape& shape) {
  BruteTree t{shape.dim, shape.depth, {}, {}, {}};
  std::vector<std::size_t> offset;
  for (int k = 0; k <= shape.depth; ++k) {
    offset.push_back(t.level_of.size());
    const std::size_t count = std::size_t{1} << (shape.dim * k);
    for (std::size_t i = 0; i < count; ++i) {
      const DyadicCube q = DyadicCube::from_flat(shape.dim, k, i);
      std::uint32_t mask = 0;
      for (std::size_t cell = 0; cell < shape.cells(); ++cell) {
        if (q.contains_cell(cell, shape)) mask |= std::uint32_t{1} << cell;
      }
      t.level_of.push_back(k);
      t.cell_mask.push_back(mask);
    }
  }
  t.children.resize(t.level_of.size());
  for (std::size_t a = 0; a < t.level_of.size(); ++a) {
    for (std::size_t b = 0; b < t.level_of.size(); ++b) {
      if (t.level_of[b] == t.level_of[a] + 1 && (t.cell_mask[b] & ~t.cell_mask[a]) == 0) {
        t.children[a].push_back(static_cast<int>(b));
      }
    }
  }
  return t;
}

std::vector<std::uint64_t> antichains(const BruteTree& t, int node) {
  std::vector<std::uint64_t> acc{0};
  for (int child : t.children[node]) {
    const auto sub = antichains(t, child);
    std::vector<std::uint64_t> next;
    next.reserve(acc.size() * sub.size());
    for (auto a : acc) {
      for (auto b : sub) next.push_back(a | b);
    }
    acc = std::move(next);
  }
  acc.push_back(std::uint64_t{1} << node);
  return acc;
}

}  // namespace

double content_bruteforce(const CellSet& set, double d) {
  const GridShape& shape = set.shape();
  validate_content_dimension(d, shape.dim);
  if (shape.cells() > 16) {
    throw CapacityError("content_bruteforce supports at most 16 cells (got " +
                        std::to_string(shape.cells()) + ")");
  }
  const BruteTree t = make_brute_tree(shape);
  std::uint32_t occupied = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.contains(i)) occupied |= std::uint32_t{1} << i;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t chain : antichains(t, 0)) {
    std::uint32_t covered = 0;
    double cost = 0.0;
    for (std::uint64_t bits = chain; bits != 0; bits &= bits - 1) {
      const int node = std::countr_zero(bits);
      covered |= t.cell_mask[node];
      cost += std::pow(2.0, -static_cast<double>(t.level_of[node]) * d);
    }
    if ((covered & occupied) == occupied && cost < best) best = cost;
  }
  return best;
}

}  // namespace choquet
