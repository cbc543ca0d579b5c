#include "choquet/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "choquet/errors.hpp"
#include "choquet/params.hpp"

namespace choquet {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || std::isnan(v)) {
    throw ParameterError(std::string(name) + " must be > 0 (got " + std::to_string(v) + ")");
  }
}

// Positive cells grouped by value, largest value first. groups[g] is the
// half-open range of `order` holding cells equal to values[g].
struct ValueGroups {
  std::vector<std::size_t> order;
  std::vector<std::size_t> bounds;  // size values.size() + 1
  std::vector<double> values;       // strictly decreasing
};

ValueGroups group_by_value(const GridFunction& f) {
  ValueGroups g;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] > 0.0) g.order.push_back(i);
  }
  std::stable_sort(g.order.begin(), g.order.end(),
                   [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });
  for (std::size_t i = 0; i < g.order.size(); ++i) {
    if (i == 0 || f[g.order[i]] != g.values.back()) {
      g.values.push_back(f[g.order[i]]);
      g.bounds.push_back(i);
    }
  }
  g.bounds.push_back(g.order.size());
  return g;
}

double pow_or_zero(double v, double p) { return v == 0.0 ? 0.0 : std::pow(v, p); }

}  // namespace

LevelSetProfile level_set_profile(const GridFunction& f, double d) {
  const GridShape& shape = f.shape();
  validate_content_dimension(d, shape.dim);
  const ValueGroups groups = group_by_value(f);
  const std::size_t m = groups.values.size();
  LevelSetProfile profile;
  profile.d = d;
  profile.thresholds.resize(m);
  profile.contents.resize(m);

  if (d == static_cast<double>(shape.dim)) {
    const double cell = std::exp2(-static_cast<double>(shape.dim * shape.depth));
    for (std::size_t g = 0; g < m; ++g) {
      profile.thresholds[m - 1 - g] = groups.values[g];
      profile.contents[m - 1 - g] = static_cast<double>(groups.bounds[g + 1]) * cell;
    }
    return profile;
  }

  ContentTree tree(shape, d);
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t i = groups.bounds[g]; i < groups.bounds[g + 1]; ++i) {
      tree.insert(groups.order[i]);
    }
    profile.thresholds[m - 1 - g] = groups.values[g];
    profile.contents[m - 1 - g] = tree.root();
  }
  return profile;
}

double choquet_integral(const LevelSetProfile& profile) {
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    sum += (profile.thresholds[k] - prev) * profile.contents[k];
    prev = profile.thresholds[k];
  }
  return sum;
}

double choquet_integral(const GridFunction& f, double d) {
  return choquet_integral(level_set_profile(f, d));
}

double lp_norm(const LevelSetProfile& profile, double p) {
  require_positive(p, "p");
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const double vp = std::pow(profile.thresholds[k], p);
    sum += (vp - prev) * profile.contents[k];
    prev = vp;
  }
  return pow_or_zero(sum, 1.0 / p);
}

double lp_norm(const GridFunction& f, double p, double d) {
  require_positive(p, "p");
  return lp_norm(level_set_profile(f, d), p);
}

std::size_t weak_norm_argmax(const LevelSetProfile& profile, double p) {
  require_positive(p, "p");
  std::size_t arg = profile.size();
  double best = 0.0;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const double v = profile.thresholds[k] * pow_or_zero(profile.contents[k], 1.0 / p);
    if (v > best) {
      best = v;
      arg = k;
    }
  }
  return arg;
}

double weak_norm(const LevelSetProfile& profile, double p) {
  const std::size_t k = weak_norm_argmax(profile, p);
  if (k == profile.size()) return 0.0;
  return profile.thresholds[k] * pow_or_zero(profile.contents[k], 1.0 / p);
}

double weak_norm(const GridFunction& f, double p, double d) {
  require_positive(p, "p");
  return weak_norm(level_set_profile(f, d), p);
}

double lorentz_norm(const LevelSetProfile& profile, double p, double r) {
  require_positive(p, "p");
  require_positive(r, "r");
  if (std::isinf(r)) return weak_norm(profile, p);
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const double vr = std::pow(profile.thresholds[k], r);
    sum += pow_or_zero(profile.contents[k], r / p) * (vr - prev) / r;
    prev = vr;
  }
  return pow_or_zero(sum, 1.0 / r);
}

double lorentz_norm(const GridFunction& f, double p, double r, double d) {
  require_positive(p, "p");
  require_positive(r, "r");
  return lorentz_norm(level_set_profile(f, d), p, r);
}

namespace {

// Per-cube layer-cake sums for every dyadic cube in one sweep. Cells are
// switched on in decreasing value order u_0 > u_1 > … > u_{m-1}; the entry
// of cube Q is piecewise constant in the step index, so each run of steps
// [start, g) where it held value c contributes c·(u_start^q − u_g^q) to the
// strong sum and u_start^p·c to the weak maximum. Only entries on the
// ancestor chain of an inserted cell change, so the sweep is O(N·L).
struct CubeSweep {
  std::vector<std::vector<double>> strong;  // Σ_g (u_g^q − u_{g+1}^q)·c_g(Q)
  std::vector<std::vector<double>> weak;    // max_g u_g^p·c_g(Q)
};

CubeSweep sweep_cubes(const GridFunction& f, double d, double strong_exp, double weak_exp) {
  const GridShape& shape = f.shape();
  const ValueGroups groups = group_by_value(f);
  const std::size_t m = groups.values.size();
  std::vector<double> uq(m + 1, 0.0);
  std::vector<double> up(m + 1, 0.0);
  for (std::size_t g = 0; g < m; ++g) {
    uq[g] = std::pow(groups.values[g], strong_exp);
    up[g] = std::pow(groups.values[g], weak_exp);
  }

  ContentTree tree(shape, d);
  CubeSweep out;
  std::vector<std::vector<std::size_t>> start(static_cast<std::size_t>(shape.depth) + 1);
  for (int k = 0; k <= shape.depth; ++k) {
    const std::size_t count = std::size_t{1} << (shape.dim * k);
    out.strong.emplace_back(count, 0.0);
    out.weak.emplace_back(count, 0.0);
    start[k].assign(count, 0);
  }

  std::size_t step = 0;
  auto close_run = [&](int k, std::size_t flat, double value, std::size_t now) {
    const std::size_t s = start[k][flat];
    if (value != 0.0 && s < now) {
      out.strong[k][flat] += value * (uq[s] - uq[now]);
      out.weak[k][flat] = std::max(out.weak[k][flat], up[s] * value);
    }
    start[k][flat] = now;
  };
  for (; step < m; ++step) {
    for (std::size_t i = groups.bounds[step]; i < groups.bounds[step + 1]; ++i) {
      tree.insert_with(groups.order[i], [&](int k, std::size_t flat, double old) {
        close_run(k, flat, old, step);
      });
    }
  }
  for (int k = 0; k <= shape.depth; ++k) {
    auto lvl = tree.level(k);
    for (std::size_t flat = 0; flat < lvl.size(); ++flat) close_run(k, flat, lvl[flat], m);
  }
  return out;
}

}  // namespace

CubeSupremum morrey_norm_detail(const GridFunction& f, double p, double q, double d) {
  require_positive(p, "p");
  require_positive(q, "q");
  require(q <= p, "q must satisfy q <= p (got q=" + std::to_string(q) + ", p=" +
                      std::to_string(p) + ")");
  validate_content_dimension(d, f.shape().dim);
  const CubeSweep sweep = sweep_cubes(f, d, q, q);
  const double expo = d / p - d / q;
  CubeSupremum best{0.0, DyadicCube::root(f.shape().dim)};
  for (int k = 0; k <= f.shape().depth; ++k) {
    const double scale = std::exp2(-static_cast<double>(k) * expo);
    const auto& lvl = sweep.strong[k];
    for (std::size_t flat = 0; flat < lvl.size(); ++flat) {
      const double v = scale * pow_or_zero(lvl[flat], 1.0 / q);
      if (v > best.value) best = {v, DyadicCube::from_flat(f.shape().dim, k, flat)};
    }
  }
  return best;
}

double morrey_norm(const GridFunction& f, double p, double q, double d) {
  return morrey_norm_detail(f, p, q, d).value;
}

CubeSupremum morrey_weak_norm_detail(const GridFunction& f, double r, double p, double d) {
  require_positive(p, "p");
  require_positive(r, "r");
  require(p <= r, "p must satisfy p <= r (got p=" + std::to_string(p) + ", r=" +
                      std::to_string(r) + ")");
  validate_content_dimension(d, f.shape().dim);
  const CubeSweep sweep = sweep_cubes(f, d, p, p);
  const double expo = d / r - d / p;
  CubeSupremum best{0.0, DyadicCube::root(f.shape().dim)};
  for (int k = 0; k <= f.shape().depth; ++k) {
    const double scale = std::exp2(-static_cast<double>(k) * expo);
    const auto& lvl = sweep.weak[k];
    for (std::size_t flat = 0; flat < lvl.size(); ++flat) {
      const double v = scale * pow_or_zero(lvl[flat], 1.0 / p);
      if (v > best.value) best = {v, DyadicCube::from_flat(f.shape().dim, k, flat)};
    }
  }
  return best;
}

double morrey_weak_norm(const GridFunction& f, double r, double p, double d) {
  return morrey_weak_norm_detail(f, r, p, d).value;
}

}  // namespace choquet
