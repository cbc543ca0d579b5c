#include <cmath>
#include <numbers>

#include "doctest.h"

#include "choquet/errors.hpp"
#include "choquet/operators.hpp"
#include "test_support.hpp"

using namespace choquet;
using testing::close;

namespace {

// Naive double loop with the documented weights.
GridFunction riesz_naive(const GridFunction& f, double alpha) {
  const GridShape& s = f.shape();
  const double n = s.dim;
  const double h = std::exp2(-s.depth);
  GridFunction out(s);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = cell_center(s, i);
    double sum = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      const auto y = cell_center(s, j);
      double w;
      if (i == j) {
        w = s.dim == 1 ? 2.0 * std::pow(h / 2, alpha) / alpha
                       : 2.0 * std::numbers::pi * std::pow(h / std::sqrt(std::numbers::pi), alpha) / alpha;
      } else {
        const double r = s.dim == 1 ? std::abs(x[0] - y[0]) : std::hypot(x[0] - y[0], x[1] - y[1]);
        w = std::pow(r, alpha - n) * std::pow(h, n);
      }
      sum += w * f[j];
    }
    out.set(i, sum);
  }
  return out;
}

bool all_close(const GridFunction& a, const GridFunction& b, double rel) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!close(a[i], b[i], rel)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("maximal operator examples") {
  const GridFunction one(GridShape{1, 6}, 1.0);
  for (double alpha : {0.0, 0.3, 0.9}) {
    const GridFunction m = fractional_maximal(one, alpha);
    for (double v : m.values()) CHECK(close(v, 1.0));
  }
  const GridFunction c(GridShape{2, 3}, 2.5);
  const GridFunction mc = fractional_maximal(c, 0.0);
  for (double v : mc.values()) CHECK(close(v, 2.5));

  GridFunction spike(GridShape{1, 3});
  spike.set(0, 8.0);
  const GridFunction m = fractional_maximal(spike, 0.5);
  for (std::size_t i = 0; i < 8; ++i) CHECK(close(m[i], std::pow((i + 1) / 8.0, -0.5)));
  CHECK(close(m[0], std::sqrt(8.0)));
  CHECK(close(m[7], 1.0));
}

TEST_CASE("maximal operator rejects alpha outside [0, n)") {
  const GridFunction f(GridShape{1, 3}, 1.0);
  CHECK_THROWS_AS(fractional_maximal(f, -0.1), ParameterError);
  CHECK_THROWS_AS(fractional_maximal(f, 1.0), ParameterError);
  CHECK_NOTHROW(fractional_maximal(GridFunction(GridShape{2, 2}, 1.0), 1.5));
}

TEST_CASE("sweep, per-size and brute-force maximal routes agree") {
  Rng rng(101);
  for (int t = 0; t < 40; ++t) {
    const int dim = 1 + static_cast<int>(rng.below(2));
    const GridFunction f = testing::random_function(rng, GridShape{dim, dim == 1 ? 6 : 3});
    const double alpha = rng.uniform(0.0, static_cast<double>(dim) * 0.99);
    const GridFunction fast = fractional_maximal(f, alpha);
    CHECK(all_close(fast, reference::fractional_maximal_brute(f, alpha), 1e-12));
    if (dim == 1) CHECK(fast == reference::fractional_maximal_by_size(f, alpha));
  }
}

TEST_CASE("maximal operator properties") {
  Rng rng(103);
  for (int t = 0; t < 60; ++t) {
    const int dim = 1 + static_cast<int>(rng.below(2));
    const GridShape shape{dim, dim == 1 ? 7 : 4};
    const GridFunction f = testing::random_function(rng, shape);
    const GridFunction g = testing::random_function(rng, shape);
    const double alpha = rng.uniform(0.0, 0.9 * dim);
    const GridFunction mf = fractional_maximal(f, alpha);
    const GridFunction mg = fractional_maximal(g, alpha);
    const GridFunction mfg = fractional_maximal(f.plus(g), alpha);
    const GridFunction mfg2 = fractional_maximal(f.plus(f), alpha);
    const GridFunction dy = fractional_maximal(f, alpha, WindowFamily::dyadic);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double tol = 1e-12 * std::max(mfg[i], 1.0);
      CHECK(mfg[i] <= mf[i] + mg[i] + tol);
      CHECK(mf[i] <= mfg2[i] + tol);  // monotone: f ≤ 2f
      CHECK(dy[i] <= mf[i] + 1e-12 * std::max(mf[i], 1.0));
    }
  }
}

TEST_CASE("pointwise power trick") {
  Rng rng(107);
  for (int t = 0; t < 60; ++t) {
    const GridFunction f = testing::random_function(rng, GridShape{1, 7});
    for (double p : {1.0, 1.5, 2.0}) {
      const double alpha = rng.uniform(0.0, 0.99 / p);
      const GridFunction lhs = fractional_maximal(f, alpha);
      const GridFunction rhs = fractional_maximal(f.power(p), alpha * p);
      for (std::size_t i = 0; i < f.size(); ++i) {
        const double l = std::pow(lhs[i], p);
        CHECK(l <= rhs[i] + 1e-12 * std::max({l, rhs[i], 1.0}));
      }
    }
  }
}

TEST_CASE("riesz direct route matches a naive double loop") {
  Rng rng(109);
  for (int t = 0; t < 10; ++t) {
    const int dim = 1 + static_cast<int>(rng.below(2));
    const GridFunction f = testing::random_function(rng, GridShape{dim, dim == 1 ? 7 : 4});
    const double alpha = rng.uniform(0.05, 0.95 * dim);
    CHECK(all_close(riesz_potential(f, alpha), riesz_naive(f, alpha), 1e-12));
  }
}

TEST_CASE("riesz fast route matches direct") {
  Rng rng(113);
  for (int t = 0; t < 20; ++t) {
    const int dim = 1 + static_cast<int>(rng.below(2));
    const GridFunction f = testing::random_function(rng, GridShape{dim, dim == 1 ? 9 : 5});
    const double alpha = rng.uniform(0.05, 0.95 * dim);
    const GridFunction a = riesz_potential(f, alpha, RieszMethod::direct);
    const GridFunction b = riesz_potential(f, alpha, RieszMethod::fast);
    CHECK(all_close(a, b, 1e-6));
  }
}

TEST_CASE("riesz linearity, symmetry and monotonicity") {
  Rng rng(127);
  const GridShape shape{1, 8};
  const GridFunction f = testing::random_function(rng, shape);
  const GridFunction rf = riesz_potential(f, 0.4);
  CHECK(riesz_potential(f.scaled(2.0), 0.4) == rf.scaled(2.0));
  CHECK(all_close(riesz_potential(f.scaled(3.7), 0.4), rf.scaled(3.7), 1e-12));

  std::vector<double> even(shape.cells());
  for (std::size_t i = 0; i < even.size() / 2; ++i) {
    even[i] = even[even.size() - 1 - i] = rng.uniform(0.0, 3.0);
  }
  const GridFunction re = riesz_potential(GridFunction(shape, even), 0.6);
  for (std::size_t i = 0; i < re.size(); ++i) CHECK(close(re[i], re[re.size() - 1 - i], 1e-12));

  const GridFunction g = f.plus(testing::random_function(rng, shape));
  const GridFunction rg = riesz_potential(g, 0.4);
  for (std::size_t i = 0; i < rf.size(); ++i) CHECK(rf[i] <= rg[i]);

  CHECK_THROWS_AS(riesz_potential(f, 0.0), ParameterError);
  CHECK_THROWS_AS(riesz_potential(f, 1.0), ParameterError);
}

TEST_CASE("riesz potential of the unit indicator converges at the left end") {
  double previous = 1.0;
  for (int depth : {8, 10, 12}) {
    const GridFunction one(GridShape{1, depth}, 1.0);
    const double x0 = std::exp2(-depth - 1);
    const double value = riesz_potential(one, 0.5)[0];
    const double error = std::abs(value - 2.0) / 2.0;
    CHECK(error < previous);
    previous = error;
    // Exact integral of |x0 - y|^{-1/2} over [0,1): 2√x0 + 2√(1-x0).
    CHECK(std::abs(value - (2 * std::sqrt(x0) + 2 * std::sqrt(1 - x0))) < 0.02);
  }
  CHECK(previous < 0.02);
}

TEST_CASE("hedberg terms") {
  ParamSet ps;
  ps.d = 0.5;
  ps.p = 1.0;
  ps.alpha = 0.25;
  ps.beta = 0.1;
  CHECK(close(hedberg_exponent_q(ps, 1), 1.6));

  const GridFunction zero(GridShape{1, 5});
  const HedbergBound zb = hedberg_bound(zero, ps);
  for (const auto& t : zb.cells) {
    CHECK(t.rhs == 0.0);
    CHECK(t.degenerate);
  }

  Rng rng(131);
  const GridFunction f = testing::random_function(rng, GridShape{1, 6});
  const HedbergBound b = hedberg_bound(f, ps);
  const GridFunction mb = fractional_maximal(f, 0.1);
  const double ratio = 1.0 / 1.6;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& t = b.cells[i];
    if (t.degenerate) continue;
    const double expected = std::pow(0.5 - 0.25, ratio - 1) * std::pow(0.15, -ratio) *
                            std::pow(b.morrey, 1 - ratio) * std::pow(mb[i], ratio);
    CHECK(close(t.rhs, expected, 1e-12));
    // At the balance radius the near and far pieces coincide with the bound.
    CHECK(close(t.near, t.far, 1e-10));
    CHECK(close(t.near, t.rhs, 1e-10));
  }
  CHECK(close(hedberg_rhs(f, 3, ps).rhs, b.cells[3].rhs, 0.0));

  ParamSet equal = ps;
  equal.beta = 0.25;
  CHECK_THROWS_AS(hedberg_exponent_q(equal, 1), ParameterError);
  ParamSet mismatch = ps;
  mismatch.q = 1.5;
  CHECK_THROWS_AS(hedberg_exponent_q(mismatch, 1), ParameterError);
  ParamSet pq = ps;
  pq.q = 1.0;
  CHECK_THROWS_AS(hedberg_exponent_q(pq, 1), ParameterError);
}

TEST_CASE("hedberg bound dominates the potential up to a moderate constant") {
  ParamSet ps;
  ps.d = 0.5;
  ps.p = 1.0;
  ps.alpha = 0.25;
  ps.beta = 0.0;
  Rng rng(137);
  for (int t = 0; t < 20; ++t) {
    const GridFunction f = testing::random_function(rng, GridShape{1, 7});
    if (f.is_zero()) continue;
    const HedbergBound b = hedberg_bound(f, ps);
    const GridFunction pot = riesz_potential(f, 0.25);
    for (std::size_t i = 0; i < f.size(); ++i) {
      REQUIRE_FALSE(b.cells[i].degenerate);
      CHECK(pot[i] <= 10.0 * b.cells[i].rhs);
    }
  }
}
