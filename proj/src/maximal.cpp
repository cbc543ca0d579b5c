#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "choquet/errors.hpp"
#include "choquet/operators.hpp"
#include "choquet/simd/kernels.hpp"

namespace choquet {

WindowFamily parse_window_family(std::string_view name) {
  if (name == "grid" || name == "grid_aligned") return WindowFamily::grid_aligned;
  if (name == "dyadic") return WindowFamily::dyadic;
  throw ParameterError("family must be grid or dyadic (got '" + std::string(name) + "')");
}

std::string_view to_string(WindowFamily family) {
  return family == WindowFamily::dyadic ? "dyadic" : "grid_aligned";
}

namespace {

void validate_alpha(double alpha, int dim) {
  if (!(alpha >= 0.0) || alpha >= static_cast<double>(dim)) {
    throw ParameterError("alpha must satisfy 0 <= alpha < n (got alpha=" +
                         std::to_string(alpha) + ", n=" + std::to_string(dim) + ")");
  }
}

// Running sum carried as an unevaluated pair hi + lo (TwoSum), so window
// sums (hi[b]-hi[a]) + (lo[b]-lo[a]) keep full relative accuracy even when a
// small window sits next to a large one.
struct CompensatedPrefix {
  std::vector<double> hi;
  std::vector<double> lo;

  template <typename Get>
  CompensatedPrefix(std::size_t n, Get&& get) : hi(n + 1, 0.0), lo(n + 1, 0.0) {
    double s = 0.0;
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = get(i);
      const double t = s + x;
      const double z = t - s;
      c += (s - (t - z)) + (x - z);
      s = t;
      hi[i + 1] = s;
      lo[i + 1] = c;
    }
  }

  double window(std::size_t a, std::size_t b) const {
    return (hi[b] - hi[a]) + (lo[b] - lo[a]);
  }
};

// weight[s] = (s·h)^{α-n} h^n: turns a window sum of cell values into
// ℓ(Q)^{α-n} ∫_Q f for a window of s cells per side.
std::vector<double> window_weights(const GridShape& shape, double alpha) {
  const std::size_t side = shape.side();
  const double h = shape.cell_side();
  const double n = static_cast<double>(shape.dim);
  std::vector<double> w(side + 1, 0.0);
  for (std::size_t s = 1; s <= side; ++s) {
    w[s] = std::pow(static_cast<double>(s) * h, alpha - n) * std::pow(h, n);
  }
  return w;
}

// out[i] = max over window starts a ∈ [i-s+1, i] ∩ [0, len-s] of v[a].
void sliding_max_into(std::span<const double> v, std::size_t s, std::size_t len,
                      std::span<double> out) {
  std::deque<std::size_t> dq;
  const std::size_t last = len - s;
  std::size_t next = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t hi = std::min(i, last);
    for (; next <= hi; ++next) {
      while (!dq.empty() && v[dq.back()] <= v[next]) dq.pop_back();
      dq.push_back(next);
    }
    const std::size_t lo = i + 1 >= s ? i + 1 - s : 0;
    while (dq.front() < lo) dq.pop_front();
    out[i] = v[dq.front()];
  }
}

GridFunction maximal_grid_1d(const GridFunction& f, double alpha) {
  const std::size_t n = f.size();
  const CompensatedPrefix prefix(n, [&](std::size_t i) { return f[i]; });
  const std::vector<double> weight = window_weights(f.shape(), alpha);
  const auto& kern = simd::active_kernels();
  // best[b] accumulates, over the starts a ≤ i seen so far, the largest
  // value of windows [a, b); for the cell i every window containing it
  // has a ≤ i < b.
  std::vector<double> best(n + 1, 0.0);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = kern.window_sweep(prefix.hi, prefix.lo, weight, i, best);
  }
  return GridFunction(f.shape(), std::move(out));
}

GridFunction maximal_grid_2d(const GridFunction& f, double alpha) {
  const std::size_t side = f.shape().side();
  const std::vector<double> weight = window_weights(f.shape(), alpha);
  // Column prefixes over rows: cols[c] sums f[r][c] for r < index.
  std::vector<CompensatedPrefix> cols;
  cols.reserve(side);
  for (std::size_t c = 0; c < side; ++c) {
    cols.emplace_back(side, [&](std::size_t r) { return f[r * side + c]; });
  }
  std::vector<double> out(side * side, 0.0);
  std::vector<double> strip(side);
  std::vector<double> windows;
  std::vector<double> rowmax;
  std::vector<double> colv;
  std::vector<double> colmax(side);
  for (std::size_t s = 1; s <= side; ++s) {
    const std::size_t starts = side - s + 1;
    windows.assign(starts * starts, 0.0);
    for (std::size_t ar = 0; ar < starts; ++ar) {
      for (std::size_t c = 0; c < side; ++c) strip[c] = cols[c].window(ar, ar + s);
      const CompensatedPrefix row(side, [&](std::size_t c) { return strip[c]; });
      for (std::size_t ac = 0; ac < starts; ++ac) {
        windows[ar * starts + ac] = row.window(ac, ac + s) * weight[s];
      }
    }
    // Separable sliding maximum: along columns of the window grid, then rows.
    rowmax.assign(starts * side, 0.0);
    for (std::size_t ar = 0; ar < starts; ++ar) {
      sliding_max_into(std::span<const double>(windows.data() + ar * starts, starts), s, side,
                       std::span<double>(rowmax.data() + ar * side, side));
    }
    colv.resize(starts);
    for (std::size_t j = 0; j < side; ++j) {
      for (std::size_t ar = 0; ar < starts; ++ar) colv[ar] = rowmax[ar * side + j];
      sliding_max_into(colv, s, side, colmax);
      for (std::size_t i = 0; i < side; ++i) {
        out[i * side + j] = std::max(out[i * side + j], colmax[i]);
      }
    }
  }
  return GridFunction(f.shape(), std::move(out));
}

GridFunction maximal_dyadic(const GridFunction& f, double alpha) {
  const GridShape& shape = f.shape();
  const std::vector<double> weight = window_weights(shape, alpha);
  std::vector<double> out(f.size(), 0.0);
  for (int k = 0; k <= shape.depth; ++k) {
    const std::size_t count = std::size_t{1} << (shape.dim * k);
    for (std::size_t flat = 0; flat < count; ++flat) {
      const DyadicCube q = DyadicCube::from_flat(shape.dim, k, flat);
      const std::size_t w = q.cells_per_axis(shape.depth);
      std::vector<std::size_t> cells;
      if (shape.dim == 1) {
        const std::size_t a = q.first_cell(0, shape.depth);
        for (std::size_t i = a; i < a + w; ++i) cells.push_back(i);
      } else {
        const std::size_t r0 = q.first_cell(0, shape.depth);
        const std::size_t c0 = q.first_cell(1, shape.depth);
        for (std::size_t r = r0; r < r0 + w; ++r) {
          for (std::size_t c = c0; c < c0 + w; ++c) cells.push_back(r * shape.side() + c);
        }
      }
      const CompensatedPrefix sum(cells.size(), [&](std::size_t i) { return f[cells[i]]; });
      const double v = sum.window(0, cells.size()) * weight[w];
      for (auto i : cells) out[i] = std::max(out[i], v);
    }
  }
  return GridFunction(shape, std::move(out));
}

}  // namespace

GridFunction fractional_maximal(const GridFunction& f, double alpha, WindowFamily family) {
  validate_alpha(alpha, f.shape().dim);
  if (family == WindowFamily::dyadic) return maximal_dyadic(f, alpha);
  return f.shape().dim == 1 ? maximal_grid_1d(f, alpha) : maximal_grid_2d(f, alpha);
}

namespace reference {

GridFunction fractional_maximal_by_size(const GridFunction& f, double alpha) {
  validate_alpha(alpha, f.shape().dim);
  if (f.shape().dim != 1) return maximal_grid_2d(f, alpha);
  const std::size_t n = f.size();
  const CompensatedPrefix prefix(n, [&](std::size_t i) { return f[i]; });
  const std::vector<double> weight = window_weights(f.shape(), alpha);
  std::vector<double> out(n, 0.0);
  std::vector<double> values;
  std::vector<double> slid(n);
  for (std::size_t s = 1; s <= n; ++s) {
    values.resize(n - s + 1);
    for (std::size_t a = 0; a + s <= n; ++a) values[a] = prefix.window(a, a + s) * weight[s];
    sliding_max_into(values, s, n, slid);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], slid[i]);
  }
  return GridFunction(f.shape(), std::move(out));
}

GridFunction fractional_maximal_brute(const GridFunction& f, double alpha) {
  validate_alpha(alpha, f.shape().dim);
  const GridShape& shape = f.shape();
  const std::size_t side = shape.side();
  const double h = shape.cell_side();
  const double n = static_cast<double>(shape.dim);
  std::vector<double> out(f.size(), 0.0);
  const std::size_t rows = shape.dim == 1 ? 1 : side;
  for (std::size_t s = 1; s <= side; ++s) {
    const double scale = std::pow(static_cast<double>(s) * h, alpha - n);
    const std::size_t rstarts = shape.dim == 1 ? 1 : side - s + 1;
    const std::size_t rlen = shape.dim == 1 ? 1 : s;
    for (std::size_t ar = 0; ar < rstarts; ++ar) {
      for (std::size_t ac = 0; ac + s <= side; ++ac) {
        long double integral = 0.0L;
        for (std::size_t r = ar; r < ar + rlen; ++r) {
          for (std::size_t c = ac; c < ac + s; ++c) integral += f[r * side + c];
        }
        const double v = scale * static_cast<double>(integral) * std::pow(h, n);
        for (std::size_t r = ar; r < ar + rlen && r < rows * side; ++r) {
          for (std::size_t c = ac; c < ac + s; ++c) {
            out[r * side + c] = std::max(out[r * side + c], v);
          }
        }
      }
    }
  }
  return GridFunction(shape, std::move(out));
}

}  // namespace reference

}  // namespace choquet
