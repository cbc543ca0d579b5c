#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "choquet/errors.hpp"
#include "choquet/operators.hpp"
#include "choquet/simd/kernels.hpp"

namespace choquet {

RieszMethod parse_riesz_method(std::string_view name) {
  if (name == "direct") return RieszMethod::direct;
  if (name == "fast") return RieszMethod::fast;
  throw ParameterError("method must be direct or fast (got '" + std::string(name) + "')");
}

std::string_view to_string(RieszMethod method) {
  return method == RieszMethod::fast ? "fast" : "direct";
}

double riesz_self_weight(const GridShape& shape, double alpha) {
  const double h = shape.cell_side();
  if (shape.dim == 1) return 2.0 * std::pow(h / 2.0, alpha) / alpha;
  const double radius = h / std::sqrt(std::numbers::pi);
  return 2.0 * std::numbers::pi * std::pow(radius, alpha) / alpha;
}

namespace {

// Kernel weights by signed offset: 1D entry N-1+m holds w(|m|); 2D entry
// (dr+S-1)(2S-1) + (dc+S-1) holds w(dr, dc).
std::vector<double> offset_kernel(const GridShape& shape, double alpha) {
  const std::size_t side = shape.side();
  const double h = shape.cell_side();
  const double n = static_cast<double>(shape.dim);
  const double hn = std::pow(h, n);
  const std::size_t width = 2 * side - 1;
  const double center = riesz_self_weight(shape, alpha);
  if (shape.dim == 1) {
    std::vector<double> k(width);
    for (std::size_t i = 0; i < width; ++i) {
      const double m = std::abs(static_cast<double>(i) - static_cast<double>(side - 1));
      k[i] = m == 0.0 ? center : std::pow(m * h, alpha - n) * hn;
    }
    return k;
  }
  std::vector<double> k(width * width);
  for (std::size_t a = 0; a < width; ++a) {
    const double dr = static_cast<double>(a) - static_cast<double>(side - 1);
    for (std::size_t b = 0; b < width; ++b) {
      const double dc = static_cast<double>(b) - static_cast<double>(side - 1);
      const double dist = std::hypot(dr, dc) * h;
      k[a * width + b] = dist == 0.0 ? center : std::pow(dist, alpha - n) * hn;
    }
  }
  return k;
}

// Per output cell the row dot products are accumulated in fixed row order.
std::vector<double> riesz_direct(const GridFunction& f, std::span<const double> kernel) {
  const auto& kern = simd::active_kernels();
  const GridShape& shape = f.shape();
  const std::size_t side = shape.side();
  std::vector<double> out(f.size(), 0.0);
  if (shape.dim == 1) {
    for (std::size_t i = 0; i < side; ++i) {
      out[i] = kern.dot(f.values(), kernel.subspan(side - 1 - i, side));
    }
    return out;
  }
  const std::size_t width = 2 * side - 1;
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      double sum = 0.0;
      for (std::size_t r = 0; r < side; ++r) {
        const std::size_t krow = r + side - 1 - i;
        sum += kern.dot(f.values().subspan(r * side, side),
                        kernel.subspan(krow * width + (side - 1 - j), side));
      }
      out[i * side + j] = sum;
    }
  }
  return out;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

struct PlanDestroy {
  void operator()(fftw_plan p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDestroy>;

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Circular convolution on a (2S)^n torus. Outputs at offset S-1 per axis
// see no wrap-around because the kernel spans 2S-1 offsets.
std::vector<double> riesz_fft(const GridFunction& f, std::span<const double> kernel) {
  const GridShape& shape = f.shape();
  const std::size_t side = shape.side();
  const std::size_t P = 2 * side;
  const std::size_t width = 2 * side - 1;
  const bool two_d = shape.dim == 2;
  const std::size_t real_size = two_d ? P * P : P;
  const std::size_t complex_size = two_d ? P * (P / 2 + 1) : P / 2 + 1;

  FftwBuffer<double> a(static_cast<double*>(fftw_malloc(sizeof(double) * real_size)));
  FftwBuffer<double> b(static_cast<double*>(fftw_malloc(sizeof(double) * real_size)));
  FftwBuffer<fftw_complex> fa(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * complex_size)));
  FftwBuffer<fftw_complex> fb(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * complex_size)));
  if (!a || !b || !fa || !fb) throw std::bad_alloc();

  Plan fwd_a;
  Plan fwd_b;
  Plan inv;
  {
    std::lock_guard lock(planner_mutex());
    const int ip = static_cast<int>(P);
    if (two_d) {
      fwd_a.reset(fftw_plan_dft_r2c_2d(ip, ip, a.get(), fa.get(), FFTW_ESTIMATE));
      fwd_b.reset(fftw_plan_dft_r2c_2d(ip, ip, b.get(), fb.get(), FFTW_ESTIMATE));
      inv.reset(fftw_plan_dft_c2r_2d(ip, ip, fa.get(), a.get(), FFTW_ESTIMATE));
    } else {
      fwd_a.reset(fftw_plan_dft_r2c_1d(ip, a.get(), fa.get(), FFTW_ESTIMATE));
      fwd_b.reset(fftw_plan_dft_r2c_1d(ip, b.get(), fb.get(), FFTW_ESTIMATE));
      inv.reset(fftw_plan_dft_c2r_1d(ip, fa.get(), a.get(), FFTW_ESTIMATE));
    }
  }

  std::fill_n(a.get(), real_size, 0.0);
  std::fill_n(b.get(), real_size, 0.0);
  if (two_d) {
    for (std::size_t r = 0; r < side; ++r) {
      for (std::size_t c = 0; c < side; ++c) a[r * P + c] = f[r * side + c];
    }
    for (std::size_t r = 0; r < width; ++r) {
      for (std::size_t c = 0; c < width; ++c) b[r * P + c] = kernel[r * width + c];
    }
  } else {
    for (std::size_t i = 0; i < side; ++i) a[i] = f[i];
    for (std::size_t i = 0; i < width; ++i) b[i] = kernel[i];
  }
  fftw_execute(fwd_a.get());
  fftw_execute(fwd_b.get());
  for (std::size_t i = 0; i < complex_size; ++i) {
    const std::complex<double> x(fa[i][0], fa[i][1]);
    const std::complex<double> y(fb[i][0], fb[i][1]);
    const std::complex<double> z = x * y;
    fa[i][0] = z.real();
    fa[i][1] = z.imag();
  }
  fftw_execute(inv.get());

  const double norm = 1.0 / static_cast<double>(real_size);
  std::vector<double> out(f.size());
  if (two_d) {
    for (std::size_t i = 0; i < side; ++i) {
      for (std::size_t j = 0; j < side; ++j) {
        out[i * side + j] = std::max(0.0, a[(i + side - 1) * P + (j + side - 1)] * norm);
      }
    }
  } else {
    for (std::size_t i = 0; i < side; ++i) out[i] = std::max(0.0, a[i + side - 1] * norm);
  }
  return out;
}

}  // namespace

GridFunction riesz_potential(const GridFunction& f, double alpha, RieszMethod method) {
  const int dim = f.shape().dim;
  if (!(alpha > 0.0) || alpha >= static_cast<double>(dim)) {
    throw ParameterError("alpha must satisfy 0 < alpha < n (got alpha=" + std::to_string(alpha) +
                         ", n=" + std::to_string(dim) + ")");
  }
  const std::vector<double> kernel = offset_kernel(f.shape(), alpha);
  auto out = method == RieszMethod::fast ? riesz_fft(f, kernel) : riesz_direct(f, kernel);
  return GridFunction(f.shape(), std::move(out));
}

}  // namespace choquet
