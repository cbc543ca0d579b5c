#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"

#include "choquet/simd/kernels.hpp"
#include "test_support.hpp"

using namespace choquet;
using simd::Kernels;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

void compare(const Kernels& a, const Kernels& b) {
  Rng rng(211);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 257u}) {
    const auto child = random_vector(rng, 2 * n, 0.0, 1.0);
    const double cap = rng.uniform(0.2, 1.5);
    std::vector<double> pa(n), pb(n);
    a.pair_sum_min(child, pa, cap);
    b.pair_sum_min(child, pb, cap);
    CHECK(pa == pb);

    const auto x = random_vector(rng, n, -1.0, 1.0);
    const auto y = random_vector(rng, n, -1.0, 1.0);
    std::vector<double> sa(n), sb(n);
    a.add(x, y, sa);
    b.add(x, y, sb);
    CHECK(sa == sb);

    const double da = a.dot(x, y), db = b.dot(x, y);
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(x[i] * y[i]);
    CHECK(std::abs(da - db) <= 1e-12 * std::max(mag, 1.0));

    // Window sweep over prefix arrays of length n+1.
    std::vector<double> hi(n + 1), lo(n + 1, 0.0), weight(n + 1);
    for (std::size_t i = 1; i <= n; ++i) hi[i] = hi[i - 1] + rng.uniform(0.0, 2.0);
    for (std::size_t i = 1; i <= n; ++i) lo[i] = rng.uniform(-1e-17, 1e-17);
    for (std::size_t i = 0; i <= n; ++i) weight[i] = std::pow(static_cast<double>(i + 1), -0.7);
    for (std::size_t start = 0; start <= n; start += 1 + n / 5) {
      auto ba = random_vector(rng, n + 1, 0.0, 0.5);
      auto bb = ba;
      const double ra = a.window_sweep(hi, lo, weight, start, ba);
      const double rb = b.window_sweep(hi, lo, weight, start, bb);
      CHECK(ra == rb);
      CHECK(ba == bb);
    }
  }
}

}  // namespace

TEST_CASE("scalar kernels compute the documented values") {
  const Kernels& k = simd::scalar_kernels();
  const std::vector<double> child = {0.1, 0.2, 0.5, 0.7};
  std::vector<double> parent(2);
  k.pair_sum_min(child, parent, 1.0);
  CHECK(parent[0] == 0.1 + 0.2);
  CHECK(parent[1] == 1.0);
  CHECK(k.dot(child, child) == doctest::Approx(0.79));

  const std::vector<double> hi = {0.0, 1.0, 3.0, 6.0}, lo(4, 0.0), w = {9, 1.0, 0.5, 0.25};
  std::vector<double> best(4, 0.0);
  const double m = k.window_sweep(hi, lo, w, 1, best);
  CHECK(best[2] == 2.0 * 1.0);  // window (1,2], sum 2, weight[1]
  CHECK(best[3] == 5.0 * 0.5);  // window (1,3], sum 5, weight[2]
  CHECK(m == 2.5);
}

TEST_CASE("vector kernels are equivalent to the scalar reference") {
  const Kernels* avx = simd::avx2_kernels();
  if (avx == nullptr) {
    MESSAGE("AVX2 kernels not available on this CPU; comparing scalar with itself");
    compare(simd::scalar_kernels(), simd::scalar_kernels());
    return;
  }
  compare(simd::scalar_kernels(), *avx);
}

TEST_CASE("active kernels honour the scalar override") {
  const Kernels& active = simd::active_kernels();
  const char* env = std::getenv("CHOQUET_LAB_SIMD");
  if (env != nullptr && std::string(env) == "scalar") {
    CHECK(active.name == simd::scalar_kernels().name);
  } else if (simd::avx2_kernels() != nullptr) {
    CHECK(active.name == simd::avx2_kernels()->name);
  }
}
