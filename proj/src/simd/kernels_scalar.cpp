#include <algorithm>

#include "choquet/simd/kernels.hpp"

namespace choquet::simd {
namespace {

void pair_sum_min(std::span<const double> child, std::span<double> parent, double cap) {
  for (std::size_t i = 0; i < parent.size(); ++i) {
    const double s = child[2 * i] + child[2 * i + 1];
    parent[i] = s < cap ? s : cap;
  }
}

void add(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
}

double window_sweep(std::span<const double> hi, std::span<const double> lo,
                    std::span<const double> weight, std::size_t start, std::span<double> best) {
  const double h0 = hi[start];
  const double l0 = lo[start];
  double m = 0.0;
  for (std::size_t b = start + 1; b < best.size(); ++b) {
    const double v = ((hi[b] - h0) + (lo[b] - l0)) * weight[b - start];
    const double nb = v > best[b] ? v : best[b];
    best[b] = nb;
    m = nb > m ? nb : m;
  }
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar", pair_sum_min, add, window_sweep, dot};
  return k;
}

}  // namespace choquet::simd
