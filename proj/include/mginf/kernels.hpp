#pragma once

#include <span>

namespace mginf::kernels {

// Trapezoidal discrete convolution on a uniform grid:
//   out[k] = h * (sum_{j=0..k} a[j] b[k-j] - a[0] b[k] / 2 - a[k] b[0] / 2)
// out[0] is 0. Each out[k] is a single fixed-order sum, so the OpenMP variant
// is bitwise equal to the serial one for any thread count or schedule.
// All three spans must have the same length.
void convolve_trapezoid_serial(std::span<const double> a, std::span<const double> b, double h,
                               std::span<double> out);
void convolve_trapezoid_omp(std::span<const double> a, std::span<const double> b, double h,
                            std::span<double> out);

}  // namespace mginf::kernels
