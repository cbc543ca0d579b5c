#include <immintrin.h>

#include "choquet/simd/kernels.hpp"

// Compiled with -mavx2; only reached after a runtime CPU check.

namespace choquet::simd {
namespace {

// Lane-wise max/min with the scalar tie and operand conventions:
// _mm256_max_pd(a, b) returns b unless a > b, same as `a > b ? a : b`.

void pair_sum_min(std::span<const double> child, std::span<double> parent, double cap) {
  const std::size_t n = parent.size();
  const __m256d vcap = _mm256_set1_pd(cap);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(child.data() + 2 * i);      // c0 c1 c2 c3
    const __m256d x1 = _mm256_loadu_pd(child.data() + 2 * i + 4);  // c4 c5 c6 c7
    // hadd gives (c0+c1, c4+c5, c2+c3, c6+c7); permute back to order.
    const __m256d s = _mm256_permute4x64_pd(_mm256_hadd_pd(x0, x1), 0b11011000);
    // scalar: s < cap ? s : cap  ==  min_pd(s, cap) returns cap unless s < cap.
    _mm256_storeu_pd(parent.data() + i, _mm256_min_pd(s, vcap));
  }
  for (; i < n; ++i) {
    const double s = child[2 * i] + child[2 * i + 1];
    parent[i] = s < cap ? s : cap;
  }
}

void add(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out.data() + i,
                     _mm256_add_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
  }
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

double window_sweep(std::span<const double> hi, std::span<const double> lo,
                    std::span<const double> weight, std::size_t start, std::span<double> best) {
  const std::size_t end = best.size();
  const double h0 = hi[start];
  const double l0 = lo[start];
  const __m256d vh0 = _mm256_set1_pd(h0);
  const __m256d vl0 = _mm256_set1_pd(l0);
  __m256d vm = _mm256_setzero_pd();
  std::size_t b = start + 1;
  const double* w = weight.data() - start;
  for (; b + 4 <= end; b += 4) {
    const __m256d dh = _mm256_sub_pd(_mm256_loadu_pd(hi.data() + b), vh0);
    const __m256d dl = _mm256_sub_pd(_mm256_loadu_pd(lo.data() + b), vl0);
    const __m256d v = _mm256_mul_pd(_mm256_add_pd(dh, dl), _mm256_loadu_pd(w + b));
    const __m256d nb = _mm256_max_pd(v, _mm256_loadu_pd(best.data() + b));
    _mm256_storeu_pd(best.data() + b, nb);
    vm = _mm256_max_pd(nb, vm);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vm);
  double m = lanes[0];
  for (int k = 1; k < 4; ++k) m = lanes[k] > m ? lanes[k] : m;
  for (; b < end; ++b) {
    const double v = ((hi[b] - h0) + (lo[b] - l0)) * weight[b - start];
    const double nb = v > best[b] ? v : best[b];
    best[b] = nb;
    m = nb > m ? nb : m;
  }
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i),
                                             _mm256_loadu_pd(b.data() + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i + 4),
                                             _mm256_loadu_pd(b.data() + i + 4)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

const Kernels& avx2_kernels_impl() {
  static const Kernels k{"avx2", pair_sum_min, add, window_sweep, dot};
  return k;
}

}  // namespace choquet::simd
