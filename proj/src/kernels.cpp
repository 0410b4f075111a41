#include "mginf/kernels.hpp"

#include <cstddef>

namespace mginf::kernels {

namespace {

inline double trapezoid_at(const double* a, const double* b, double h, std::ptrdiff_t k) {
  if (k == 0) return 0.0;
  double acc = 0.0;
  for (std::ptrdiff_t j = 0; j <= k; ++j) acc += a[j] * b[k - j];
  acc -= 0.5 * a[0] * b[k];
  acc -= 0.5 * a[k] * b[0];
  return h * acc;
}

}  // namespace

void convolve_trapezoid_serial(std::span<const double> a, std::span<const double> b, double h,
                               std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = trapezoid_at(a.data(), b.data(), h, k);
}

void convolve_trapezoid_omp(std::span<const double> a, std::span<const double> b, double h,
                            std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  // Row cost grows with k; dynamic chunks keep threads balanced.
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < n; ++k) po[k] = trapezoid_at(pa, pb, h, k);
}

}  // namespace mginf::kernels
