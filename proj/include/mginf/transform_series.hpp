#pragma once

#include "mginf/execution.hpp"
#include "mginf/model_params.hpp"
#include "mginf/riccati_general.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mginf {

enum class GridKind { Density, Cdf };

/// Samples of a function at t = 0, h, 2h, ..., (n-1)h.
class GridFunction {
 public:
  GridFunction(double step, std::vector<double> values, GridKind kind);

  double step() const noexcept { return step_; }
  GridKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double time(std::size_t k) const noexcept { return step_ * static_cast<double>(k); }
  double t_max() const noexcept { return time(values_.size() - 1); }
  /// Linear interpolation; held at the last sample beyond t_max.
  double at(double t) const;
  /// True when no sample drops below its predecessor by more than tol * (1 + |value|).
  bool is_nondecreasing(double tol) const;

 private:
  double step_;
  std::vector<double> values_;
  GridKind kind_;
};

struct GridSpec {
  double step;
  double t_max;

  std::size_t points() const;
  /// h = min(0.005/lambda, alpha/200) over twelve busy-period means.
  static GridSpec default_for(const QueueParams& params);
};

/// Trapezoidal convolution of two density-like grids of equal step; the
/// result has the length of the shorter input and the kind of b.
GridFunction grid_convolve(const GridFunction& a, const GridFunction& b,
                           Execution exec = Execution::Parallel);

struct LaplacePoint {
  double s;
  double value;
};

/// Busy-period transform from an arbitrary service CDF:
///   1 + (s - 1 / int_0^inf exp(-s t - lambda int_0^t (1 - G))) / lambda.
/// Nested composite Gauss-Legendre: panels of width <= min(alpha, 1/(lambda+s))/4,
/// also split at `breakpoints` (kinks of G such as beta knots), carry the inner
/// integral forward; the analytic tail exp(-Lambda(T) - s T) / s closes it.
/// Returns 1 at s = 0.
LaplacePoint busy_period_laplace_from_service(const QueueParams& params,
                                              const std::function<double(double)>& service_cdf, double s,
                                              std::span<const double> breakpoints = {});

/// Busy-period transform through the kernel:
///   (1 - (s + lambda)(1 - G(0)) Lf(s)) / (1 - lambda (1 - G(0)) Lf(s)).
LaplacePoint busy_period_laplace_general(const KernelContext& ctx, double s);

/// Idle period (Exp(lambda)) and busy period are independent, so the cycle
/// transform is the product.
LaplacePoint busy_cycle_laplace(const QueueParams& params, const LaplacePoint& bp);

/// Laplace-Stieltjes transform of a CDF grid, s * int e^{-st} F(t) dt by the
/// trapezoid rule, with F taken as 1 past the grid.
double laplace_of_cdf_grid(const GridFunction& cdf, double s);

/// Smallest N with q^{N+1} / (1 - q) < tol, q = 1 - e^{-rho}: the mass left
/// out of the convolution series after N terms.
std::size_t series_truncation_order(const QueueParams& params, double tol);

inline constexpr std::size_t kMaxSeriesTerms = 4000;
/// Largest admissible h * (lambda + max|beta|) for the series grid.
inline constexpr double kMaxStepRate = 0.02;

/// Busy-period CDF on the grid:
///   B = A + A * sum_{n>=1} c^n f^{*n},  A = 1 - (1-G(0))(f + lambda int_0^t f),  c = lambda (1-G(0)),
/// i.e. the series with the n = 0 term as the convolution identity.
GridFunction busy_period_cdf_series(const KernelContext& ctx, const GridSpec& grid, double tol,
                                    Execution exec = Execution::Parallel);

/// Busy-cycle CDF on the grid: Z = (lambda e^{-lambda t}) * B, the
/// exponential factor integrated exactly against B interpolated linearly.
GridFunction busy_cycle_cdf_series(const KernelContext& ctx, const GridSpec& grid, double tol,
                                   Execution exec = Execution::Parallel);

/// Z from an already computed busy-period grid.
GridFunction busy_cycle_from_busy_period(const QueueParams& params, const GridFunction& busy_period);

}  // namespace mginf
