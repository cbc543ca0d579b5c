#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "choquet/grid.hpp"
#include "choquet/rng.hpp"

namespace testing {

using choquet::CellSet;
using choquet::GridFunction;
using choquet::GridShape;
using choquet::Rng;

inline bool close(double a, double b, double rel = 1e-12) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1.0});
}

inline CellSet random_set(Rng& rng, GridShape shape, double density) {
  CellSet s(shape);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (rng.chance(density)) s.insert(i);
  }
  return s;
}

/// Step function with few distinct values, a zero region and occasional
/// large spikes.
inline GridFunction random_function(Rng& rng, GridShape shape) {
  std::vector<double> v(shape.cells());
  const int levels = 1 + static_cast<int>(rng.below(6));
  const double zero = rng.uniform(0.0, 0.6);
  const std::size_t block = std::size_t{1} << rng.below(static_cast<std::uint64_t>(shape.depth));
  double current = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i % block == 0) {
      current = rng.chance(zero) ? 0.0 : (1.0 + static_cast<double>(rng.below(levels))) *
                                             rng.uniform(0.25, 2.0);
      if (rng.chance(0.05)) current *= 16.0;
    }
    v[i] = current;
  }
  return GridFunction(shape, std::move(v));
}

}  // namespace testing
