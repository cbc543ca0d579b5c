#include <cmath>
#include <vector>

#include "doctest.h"

#include "choquet/content.hpp"
#include "choquet/errors.hpp"
#include "choquet/generators.hpp"
#include "test_support.hpp"

using namespace choquet;
using testing::close;

namespace {

CellSet set_of(int dim, int depth, std::vector<std::size_t> cells) {
  return CellSet::from_indices(GridShape{dim, depth}, cells);
}

bool witness_valid(const CellSet& set, const ContentValue& v, double d) {
  CellSet covered(set.shape());
  for (const auto& q : v.witness) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (!q.contains_cell(i, set.shape())) continue;
      if (covered.contains(i)) return false;  // overlap
      covered.insert(i);
    }
  }
  if (!set.subset_of(covered)) return false;
  return close(cover_cost(v.witness, d), v.value);
}

}  // namespace

TEST_CASE("content of worked examples") {
  CHECK(dyadic_content(CellSet::full(GridShape{1, 7}), 0.5).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dyadic_content(CellSet::full(GridShape{2, 4}), 1.3).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dyadic_content(set_of(1, 3, {5}), 0.5).value ==
        doctest::Approx(std::sqrt(1.0 / 8.0)).epsilon(1e-12));
  const CellSet cantor4 = set_of(1, 4, {0, 3, 12, 15});
  CHECK(close(dyadic_content(cantor4, 0.5).value, 1.0));
  CHECK(close(dyadic_content(cantor4, 1.0).value, 0.25));
}

TEST_CASE("empty set has zero content and no witness") {
  const auto v = dyadic_content(CellSet(GridShape{1, 5}), 0.3);
  CHECK(v.value == 0.0);
  CHECK(v.witness.empty());
}

TEST_CASE("dimension out of range is a parameter error") {
  const CellSet s = set_of(1, 3, {1});
  CHECK_THROWS_AS(dyadic_content(s, 0.0), ParameterError);
  CHECK_THROWS_AS(dyadic_content(s, 1.5), ParameterError);
  CHECK_NOTHROW(dyadic_content(set_of(2, 2, {1}), 1.5));
  CHECK_THROWS_AS(dyadic_content(set_of(2, 2, {1}), 2.5), ParameterError);
}

TEST_CASE("brute force examples and capacity") {
  CHECK(close(content_bruteforce(CellSet::full(GridShape{1, 3}), 0.7), 1.0));
  CHECK(close(content_bruteforce(set_of(1, 2, {2}), 0.5), 0.5));
  CHECK(close(content_bruteforce(set_of(1, 2, {0, 3}), 0.5), 1.0));
  CHECK_THROWS_AS(content_bruteforce(CellSet(GridShape{1, 5}), 0.5), CapacityError);
  CHECK_THROWS_AS(content_bruteforce(CellSet(GridShape{2, 3}), 0.5), CapacityError);
}

TEST_CASE("ties resolve to the coarsest cover") {
  const auto v = dyadic_content(set_of(1, 2, {0, 3}), 0.5);
  REQUIRE(v.witness.size() == 1);
  CHECK(v.witness[0] == DyadicCube::root(1));
}

TEST_CASE("DP equals brute force on every subset of the 8-cell grid") {
  const GridShape shape{1, 3};
  for (double d : {0.25, 0.5, 0.75, 1.0}) {
    for (unsigned mask = 0; mask < 256; ++mask) {
      CellSet s(shape);
      for (std::size_t i = 0; i < 8; ++i) {
        if (mask >> i & 1u) s.insert(i);
      }
      CHECK(close(dyadic_content(s, d).value, content_bruteforce(s, d)));
    }
  }
}

TEST_CASE("DP equals brute force on random 4x4 sets") {
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const CellSet s = testing::random_set(rng, GridShape{2, 2}, rng.uniform());
    const double d = rng.uniform(0.05, 2.0);
    CHECK(close(dyadic_content(s, d).value, content_bruteforce(s, d)));
  }
}

TEST_CASE("witness is a disjoint exact cover with matching cost") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const int dim = 1 + static_cast<int>(rng.below(2));
    const GridShape shape{dim, dim == 1 ? 7 : 4};
    const CellSet s = testing::random_set(rng, shape, rng.uniform());
    const double d = rng.uniform(0.05, static_cast<double>(dim));
    CHECK(witness_valid(s, dyadic_content(s, d), d));
  }
}

TEST_CASE("content properties on random sets") {
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    const int dim = 1 + static_cast<int>(rng.below(2));
    const GridShape shape{dim, dim == 1 ? 8 : 4};
    const double n = dim;
    const double d = rng.uniform(0.05, n);
    const CellSet a = testing::random_set(rng, shape, rng.uniform(0.0, 0.5));
    const CellSet b = testing::random_set(rng, shape, rng.uniform(0.0, 0.5));
    const CellSet ab = a.united(b);
    const double ca = dyadic_content(a, d).value;
    const double cb = dyadic_content(b, d).value;
    const double cab = dyadic_content(ab, d).value;
    CHECK(ca <= cab * (1 + 1e-12));
    CHECK(cab <= (ca + cb) * (1 + 1e-12));
    // Lebesgue measure at d = n, by counting.
    CHECK(dyadic_content(a, n).value ==
          static_cast<double>(a.count()) * std::exp2(-n * shape.depth));
    // Power inequality: H^{θd} ≤ (H^d)^θ for 1 ≤ θ ≤ n/d.
    const double theta = rng.uniform(1.0, n / d);
    CHECK(dyadic_content(a, theta * d).value <= std::pow(ca, theta) * (1 + 1e-12) + 1e-300);
  }
}

TEST_CASE("cube law: a dyadic cube has content side^d") {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const int dim = 1 + static_cast<int>(rng.below(2));
    const GridShape shape{dim, dim == 1 ? 10 : 5};
    const DyadicCube q = random_cube(rng, dim, 0, shape.depth);
    const double d = rng.uniform(0.01, static_cast<double>(dim));
    CHECK(close(dyadic_content(CellSet::from_cube(shape, q), d).value, std::pow(q.side(), d)));
  }
}

TEST_CASE("subtree table examples") {
  const auto full = subtree_contents(CellSet::full(GridShape{1, 6}), 0.5);
  for (int k = 0; k <= 6; ++k) {
    for (double v : full.level(k)) CHECK(close(v, std::exp2(-k * 0.5)));
  }
  const auto empty = subtree_contents(CellSet(GridShape{2, 3}), 0.7);
  for (int k = 0; k <= 3; ++k) {
    for (double v : empty.level(k)) CHECK(v == 0.0);
  }
  const auto cantor = subtree_contents(set_of(1, 4, {0, 3, 12, 15}), 0.5);
  CHECK(close(cantor.at(DyadicCube{1, 1, {0, 0}}), 0.5));
  CHECK(close(cantor.root(), 1.0));
}

TEST_CASE("subtree entries equal the content of the restricted set") {
  Rng rng(23);
  for (int t = 0; t < 40; ++t) {
    const GridShape shape{2, 3};
    const CellSet s = testing::random_set(rng, shape, 0.4);
    const double d = rng.uniform(0.1, 2.0);
    const auto tree = subtree_contents(s, d);
    for (int k = 0; k <= 3; ++k) {
      for (std::size_t j = 0; j < (std::size_t{1} << (2 * k)); ++j) {
        const DyadicCube q = DyadicCube::from_flat(2, k, j);
        const CellSet part = s.intersected(CellSet::from_cube(shape, q));
        CHECK(close(tree.at(q), dyadic_content(part, d).value));
      }
    }
  }
}

TEST_CASE("incremental insertion matches the full pass bitwise") {
  Rng rng(29);
  for (int t = 0; t < 30; ++t) {
    const int dim = 1 + static_cast<int>(rng.below(2));
    const GridShape shape{dim, dim == 1 ? 9 : 5};
    const double d = rng.uniform(0.1, static_cast<double>(dim));
    const CellSet s = testing::random_set(rng, shape, rng.uniform());
    ContentTree inc(shape, d);
    for (std::size_t i : s.indices()) inc.insert(i);
    const ContentTree full = subtree_contents(s, d);
    for (int k = 0; k <= shape.depth; ++k) {
      const auto a = inc.level(k);
      const auto b = full.level(k);
      CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
    }
  }
}
