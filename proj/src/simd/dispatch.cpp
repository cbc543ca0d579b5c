#include <cstdlib>
#include <string_view>

#include "choquet/simd/kernels.hpp"

namespace choquet::simd {

#if defined(CHOQUET_HAVE_AVX2)
const Kernels& avx2_kernels_impl();
#endif

const Kernels* avx2_kernels() {
#if defined(CHOQUET_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_kernels_impl() : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& active_kernels() {
  static const Kernels& chosen = []() -> const Kernels& {
    const char* env = std::getenv("CHOQUET_LAB_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
    if (const Kernels* k = avx2_kernels()) return *k;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace choquet::simd
