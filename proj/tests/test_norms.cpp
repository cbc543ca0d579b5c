#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"

#include "choquet/errors.hpp"
#include "choquet/norms.hpp"
#include "test_support.hpp"

using namespace choquet;
using testing::close;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// f = 2 on [0,1/2), 1 on [1/2,1).
GridFunction step() { return GridFunction(GridShape{1, 1}, {2.0, 1.0}); }

// Layer cake by midpoint quadrature in t, with H({f > t}) from the content
// of the strict superlevel set. Independent of the profile code path.
double quadrature_lp(const GridFunction& f, double p, double d, int points) {
  const double top = f.max();
  if (top == 0.0) return 0.0;
  const double tmax = std::pow(top, p);
  const double dt = tmax / points;
  double sum = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = (i + 0.5) * dt;
    CellSet above(f.shape());
    for (std::size_t c = 0; c < f.size(); ++c) {
      if (std::pow(f[c], p) > t) above.insert(c);
    }
    sum += dyadic_content(above, d, false).value * dt;
  }
  return std::pow(sum, 1.0 / p);
}

double cube_scan_morrey(const GridFunction& f, double p, double q, double d) {
  const GridShape& s = f.shape();
  double best = 0.0;
  for (int k = 0; k <= s.depth; ++k) {
    for (std::size_t j = 0; j < (std::size_t{1} << (s.dim * k)); ++j) {
      const DyadicCube cube = DyadicCube::from_flat(s.dim, k, j);
      const GridFunction part = restrict(f, CellSet::from_cube(s, cube));
      best = std::max(best, std::pow(cube.side(), d / p - d / q) * lp_norm(part, q, d));
    }
  }
  return best;
}

double cube_scan_weak_morrey(const GridFunction& f, double r, double p, double d) {
  const GridShape& s = f.shape();
  double best = 0.0;
  for (int k = 0; k <= s.depth; ++k) {
    for (std::size_t j = 0; j < (std::size_t{1} << (s.dim * k)); ++j) {
      const DyadicCube cube = DyadicCube::from_flat(s.dim, k, j);
      const GridFunction part = restrict(f, CellSet::from_cube(s, cube));
      best = std::max(best, std::pow(cube.side(), d / r - d / p) * weak_norm(part, p, d));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("choquet integral examples") {
  CHECK(close(choquet_integral(GridFunction(GridShape{1, 6}, 3.5), 0.4), 3.5));
  CHECK(close(choquet_integral(GridFunction(GridShape{2, 3}, 0.25), 1.7), 0.25));
  const CellSet e = CellSet::from_indices(GridShape{1, 4}, std::vector<std::size_t>{0, 3, 12, 15});
  CHECK(close(choquet_integral(GridFunction::indicator(e), 0.5), dyadic_content(e, 0.5).value));
  CHECK(close(choquet_integral(step(), 0.5), 1.0 + std::sqrt(0.5)));
}

TEST_CASE("lp norm examples") {
  // 4·2^{-1/2} + (1 - 2^{-1/2}) = 3.12132..., square root 1.76673.
  CHECK(close(lp_norm(step(), 2.0, 0.5), std::sqrt(4.0 * std::sqrt(0.5) + 1.0 - std::sqrt(0.5))));
  CHECK(lp_norm(step(), 2.0, 0.5) == doctest::Approx(1.76673).epsilon(1e-5));
  CHECK(close(lp_norm(GridFunction(GridShape{1, 3}, 2.5), 0.7, 0.3), 2.5));
  const CellSet e = CellSet::from_indices(GridShape{1, 4}, std::vector<std::size_t>{1, 2, 9});
  CHECK(close(lp_norm(GridFunction::indicator(e), 3.0, 0.6),
              std::pow(dyadic_content(e, 0.6).value, 1.0 / 3.0)));
}

TEST_CASE("lp norm agrees with threshold quadrature") {
  Rng rng(41);
  for (int t = 0; t < 12; ++t) {
    const GridFunction f = testing::random_function(rng, GridShape{1, 5});
    const double p = rng.uniform(0.5, 3.0);
    const double d = rng.uniform(0.1, 1.0);
    CHECK(close(lp_norm(f, p, d), quadrature_lp(f, p, d, 4000), 2e-3));
  }
}

TEST_CASE("weak norm examples") {
  CHECK(close(weak_norm(step(), 1.0, 0.5), std::sqrt(2.0)));
  CHECK(weak_norm(step(), 1.0, 0.5) <= choquet_integral(step(), 0.5));
  const CellSet e = CellSet::from_indices(GridShape{1, 4}, std::vector<std::size_t>{4, 5, 6});
  CHECK(close(weak_norm(GridFunction::indicator(e), 2.0, 0.5),
              std::sqrt(dyadic_content(e, 0.5).value)));
  CHECK(weak_norm(GridFunction(GridShape{1, 3}), 1.0, 0.5) == 0.0);
}

TEST_CASE("weak norm equals the threshold supremum") {
  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    const GridFunction f = testing::random_function(rng, GridShape{1, 6});
    const double p = rng.uniform(0.3, 3.0);
    const double d = rng.uniform(0.1, 1.0);
    // sup over t of t·H({f > t})^{1/p}, scanning t just below each value.
    double sup = 0.0;
    for (double v : f.values()) {
      if (v == 0.0) continue;
      const double t = std::nextafter(v, 0.0);
      CellSet above(f.shape());
      for (std::size_t c = 0; c < f.size(); ++c) {
        if (f[c] > t) above.insert(c);
      }
      sup = std::max(sup, t * std::pow(dyadic_content(above, d, false).value, 1.0 / p));
    }
    CHECK(close(weak_norm(f, p, d), sup, 1e-12));
  }
}

TEST_CASE("lorentz norm identities") {
  Rng rng(47);
  const CellSet e = CellSet::from_indices(GridShape{1, 5}, std::vector<std::size_t>{0, 7, 8, 30});
  const double ce = dyadic_content(e, 0.4).value;
  CHECK(close(lorentz_norm(GridFunction::indicator(e), 1.5, 0.8, 0.4),
              std::pow(ce, 1.0 / 1.5) * std::pow(0.8, -1.0 / 0.8)));
  for (int t = 0; t < 200; ++t) {
    const GridFunction f = testing::random_function(rng, GridShape{1, 7});
    const double p = rng.uniform(0.2, 4.0);
    const double d = rng.uniform(0.05, 1.0);
    CHECK(lorentz_norm(f, p, kInf, d) == weak_norm(f, p, d));
    CHECK(close(lorentz_norm(f, p, p, d) * std::pow(p, 1.0 / p), lp_norm(f, p, d), 1e-9));
  }
  CHECK_THROWS_AS(lorentz_norm(step(), 1.0, 0.0, 0.5), ParameterError);
  CHECK_THROWS_AS(lorentz_norm(step(), -1.0, 1.0, 0.5), ParameterError);
}

TEST_CASE("morrey norm examples") {
  const GridFunction one(GridShape{1, 5}, 1.0);
  const auto s = morrey_norm_detail(one, 2.0, 1.0, 0.5);
  CHECK(close(s.value, 1.0));
  CHECK(s.cube == DyadicCube::root(1));
  CHECK(close(morrey_norm(GridFunction(GridShape{2, 3}, 4.0), 3.0, 1.5, 1.2), 4.0));
  Rng rng(53);
  for (int t = 0; t < 50; ++t) {
    const GridFunction f = testing::random_function(rng, GridShape{1, 6});
    const double p = rng.uniform(0.3, 3.0);
    const double d = rng.uniform(0.1, 1.0);
    CHECK(close(morrey_norm(f, p, p, d), lp_norm(f, p, d), 1e-12));
  }
}

TEST_CASE("morrey rejects q above p") {
  try {
    (void)morrey_norm(step(), 1.0, 2.0, 0.5);
    FAIL("expected a parameter error");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("q must satisfy q <= p") != std::string::npos);
  }
}

TEST_CASE("morrey norms agree with an exhaustive cube scan") {
  Rng rng(59);
  for (int t = 0; t < 30; ++t) {
    const int dim = 1 + static_cast<int>(rng.below(2));
    const GridFunction f = testing::random_function(rng, GridShape{dim, dim == 1 ? 6 : 3});
    const double d = rng.uniform(0.1, static_cast<double>(dim));
    const double p = rng.uniform(0.5, 3.0);
    const double q = rng.uniform(0.2, p);
    CHECK(close(morrey_norm(f, p, q, d), cube_scan_morrey(f, p, q, d), 1e-12));
    const double r = rng.uniform(p, 4.0);
    CHECK(close(morrey_weak_norm(f, r, p, d), cube_scan_weak_morrey(f, r, p, d), 1e-12));
  }
}

TEST_CASE("weak morrey examples") {
  CHECK(close(morrey_weak_norm(GridFunction(GridShape{1, 4}, 1.0), 1.5, 1.5, 0.5), 1.0));
  CHECK(close(morrey_weak_norm(step(), 1.0, 1.0, 0.5), std::sqrt(2.0)));
}

TEST_CASE("embeddings and inclusions on random functions") {
  Rng rng(61);
  const double slack = 1e-9;
  for (int t = 0; t < 300; ++t) {
    const int dim = 1 + static_cast<int>(rng.below(2));
    const GridFunction f = testing::random_function(rng, GridShape{dim, dim == 1 ? 7 : 4});
    const double n = dim;
    const double d = rng.uniform(0.1, n);
    const double p = rng.uniform(0.3, 3.0);
    const double theta = rng.uniform(1.0, n / d);
    const double td = std::min(theta * d, n);
    const double strong = lp_norm(f, p, d);
    const double weak = weak_norm(f, p, d);
    const double scale = std::max(strong, 1.0) * slack;
    CHECK(weak <= strong + scale);
    CHECK(weak_norm(f, theta * p, td) <= weak + scale);
    CHECK(lp_norm(f, theta * p, td) <= std::pow(theta, 1.0 / (theta * p)) * strong + scale);

    const double q2 = rng.uniform(0.2, p);
    const double q1 = rng.uniform(0.1, q2);
    const double m2 = morrey_norm(f, p, q2, d);
    CHECK(morrey_norm(f, p, q1, d) <= m2 + std::max(m2, 1.0) * slack);
    CHECK(morrey_norm(f, theta * p, theta * q2, td) <=
          std::pow(theta, 1.0 / (theta * q2)) * m2 + std::max(m2, 1.0) * slack);
  }
}

TEST_CASE("norms are positively homogeneous") {
  Rng rng(67);
  for (int t = 0; t < 50; ++t) {
    const GridFunction f = testing::random_function(rng, GridShape{1, 6});
    const double c = rng.uniform(0.1, 10.0);
    const GridFunction g = f.scaled(c);
    const double p = rng.uniform(0.5, 3.0), d = rng.uniform(0.1, 1.0);
    CHECK(close(choquet_integral(g, d), c * choquet_integral(f, d), 1e-12));
    CHECK(close(lp_norm(g, p, d), c * lp_norm(f, p, d), 1e-12));
    CHECK(close(weak_norm(g, p, d), c * weak_norm(f, p, d), 1e-12));
    CHECK(close(lorentz_norm(g, p, 1.3, d), c * lorentz_norm(f, p, 1.3, d), 1e-12));
    CHECK(close(morrey_norm(g, p, p / 2, d), c * morrey_norm(f, p, p / 2, d), 1e-12));
  }
}

TEST_CASE("level set profile is monotone") {
  Rng rng(71);
  const GridFunction f = testing::random_function(rng, GridShape{2, 5});
  const auto profile = level_set_profile(f, 1.3);
  for (std::size_t k = 1; k < profile.size(); ++k) {
    CHECK(profile.thresholds[k - 1] < profile.thresholds[k]);
    CHECK(profile.contents[k] <= profile.contents[k - 1]);
  }
}

TEST_CASE("restriction") {
  Rng rng(73);
  const GridShape shape{1, 5};
  const GridFunction f = testing::random_function(rng, shape);
  CHECK(restrict(f, CellSet::full(shape)) == f);
  CHECK(restrict(f, CellSet(shape)).is_zero());
  const CellSet a = testing::random_set(rng, shape, 0.5), b = testing::random_set(rng, shape, 0.5);
  CHECK(restrict(GridFunction::indicator(a), b) == GridFunction::indicator(a.intersected(b)));
  CHECK_THROWS_AS(restrict(f, CellSet(GridShape{1, 4})), ShapeError);
}
