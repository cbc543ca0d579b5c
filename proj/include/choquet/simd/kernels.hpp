#pragma once

// Data-parallel inner loops shared by the content DP level reduction, the
// maximal-operator window sweep and the direct Riesz sum.
//
// Every kernel has a scalar reference and, where the CPU supports it, an
// AVX2 variant picked at runtime. Elementwise kernels (everything except
// dot) are bitwise identical across variants: they use only add, sub, mul
// and max/min with no contraction. dot reduces with four lanes in the
// vector variant and agrees with the sequential scalar sum to ~1e-15
// relative for non-negative data.

#include <cstddef>
#include <span>
#include <string_view>

namespace choquet::simd {

struct Kernels {
  std::string_view name;

  /// parent[i] = min(cap, child[2i] + child[2i+1]) for i < parent.size();
  /// child.size() must be 2·parent.size().
  void (*pair_sum_min)(std::span<const double> child, std::span<double> parent, double cap);

  /// out[i] = a[i] + b[i].
  void (*add)(std::span<const double> a, std::span<const double> b, std::span<double> out);

  /// One row of the fractional-maximal sweep. For every end b in
  /// (start, N], with window sum S = (hi[b]-hi[start]) + (lo[b]-lo[start])
  /// and v = S·weight[b-start], sets best[b] = max(best[b], v); returns the
  /// max of best[b] over that range (0 if empty). hi/lo/best have N+1
  /// entries, weight at least N+1-start.
  double (*window_sweep)(std::span<const double> hi, std::span<const double> lo,
                         std::span<const double> weight, std::size_t start,
                         std::span<double> best);

  /// Σ a[i]·b[i].
  double (*dot)(std::span<const double> a, std::span<const double> b);
};

const Kernels& scalar_kernels();

/// nullptr when not compiled in or the running CPU lacks AVX2.
const Kernels* avx2_kernels();

/// The variant used by the library. Defaults to the widest supported set;
/// CHOQUET_LAB_SIMD=scalar forces the reference kernels.
const Kernels& active_kernels();

}  // namespace choquet::simd
