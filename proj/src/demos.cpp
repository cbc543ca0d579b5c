#include <cmath>

#include "choquet/content.hpp"
#include "choquet/errors.hpp"
#include "choquet/generators.hpp"
#include "choquet/inequalities.hpp"
#include "choquet/norms.hpp"
#include "choquet/operators.hpp"

namespace choquet {

NonadditivityReport nonadditivity_demo(int m, double d, int depth) {
  require(m >= 1, "m must be >= 1");
  require(d > 0.0 && d <= 1.0, "d must satisfy 0 < d <= 1");
  const int L = depth == -1 ? m : depth;
  if (m > L) throw CapacityError("m must not exceed the grid depth L");
  const GridShape shape{1, L};
  shape.validate();

  // f ≡ 1, so ∫_{Q_j} f dH^d = H^d(Q_j), read off one subtree pass.
  const ContentTree tree = subtree_contents(CellSet::full(shape), d);
  NonadditivityReport out;
  out.m = m;
  out.d = d;
  const std::size_t pieces = std::size_t{1} << m;
  for (std::size_t j = 0; j < pieces; ++j) {
    out.sum += tree.at(DyadicCube::from_flat(1, m, j));
  }
  out.whole = choquet_integral(GridFunction(shape, 1.0), d);
  out.ratio = out.sum / out.whole;
  return out;
}

DivergenceReport divergence_demo(std::span<const int> levels, double alpha, bool control) {
  if (levels.empty()) throw UsageError("divergence demo needs at least one level");
  require(alpha > 0.0 && alpha < 1.0, "alpha must satisfy 0 < alpha < 1");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    require(levels[i] > levels[i - 1], "levels must be strictly ascending");
  }
  DivergenceReport out;
  out.alpha = alpha;
  out.control = control;
  GeneratorSpec spec;
  spec.kind = GeneratorKind::power_law;
  spec.exponent = 1.0;
  for (int L : levels) {
    const GridShape shape{1, L};
    shape.validate();
    const GridFunction f = control ? GridFunction(shape, 1.0) : generate(spec, 0, shape);
    const double lhs = weak_norm(fractional_maximal(f, alpha), 1.0, 1.0 - alpha);
    const double rhs = weak_norm(f, 1.0, 1.0);
    out.levels.push_back(L);
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    out.ratios.push_back(lhs / rhs);
  }
  return out;
}

}  // namespace choquet
