#pragma once

#include "mginf/closed_form.hpp"
#include "mginf/model_params.hpp"

#include <optional>
#include <vector>

namespace mginf {

/// Integral of beta over [0, t]; exact for constant and piecewise-linear beta.
double cumulative_beta(const ValidatedBeta& vbeta, double t);

/// Kernel f(t) = exp(-lambda t - int_0^t beta) of the general Riccati
/// solution, with its running integral and total integral I.
///
/// Past the last beta knot f is an exact exponential of rate
/// lambda + beta_tail, so the horizon T* is the last knot and the tail of I is
/// added analytically. On [0, T*] the running integral is cached on a uniform
/// grid of step ~1e-3 * alpha and completed between grid points with a
/// Gauss-Legendre panel. Immutable once built.
///
/// The degenerate context (beta == -lambda) stands for G == 1; I is infinite
/// and the kernel accessors are not meaningful.
class KernelContext {
 public:
  static KernelContext degenerate(const QueueParams& params);

  const QueueParams& params() const noexcept { return params_; }
  bool is_degenerate() const noexcept { return !vbeta_.has_value(); }
  /// I = int_0^inf f.
  double total_integral() const noexcept { return total_; }
  double horizon() const noexcept { return horizon_; }
  double tail_rate() const noexcept { return tail_rate_; }

  double beta(double t) const;
  double kernel(double t) const;
  /// int_0^t f.
  double kernel_integral(double t) const;
  /// int_0^inf e^{-st} f(t) dt.
  double kernel_laplace(double s) const;
  /// Largest |beta| over the table, for grid step checks.
  double beta_max_abs() const;

  friend KernelContext build_kernel(const ValidatedBeta& vbeta);

 private:
  explicit KernelContext(const QueueParams& params) : params_(params) {}

  double integrate_kernel(double a, double b) const;

  QueueParams params_;
  std::optional<ValidatedBeta> vbeta_;
  double total_ = 0.0;
  double horizon_ = 0.0;
  double tail_rate_ = 0.0;
  double cache_step_ = 0.0;
  std::vector<double> cumulative_;
};

/// Throws DivergentKernelIntegral when the tail rate lambda + beta_tail <= 0.
KernelContext build_kernel(const ValidatedBeta& vbeta);

/// build_kernel, except beta identically -lambda goes to the degenerate context.
KernelContext make_kernel(const ValidatedBeta& vbeta);

/// G(t) = 1 - (1/lambda)(1-e^{-rho}) f(t) / (I - (1-e^{-rho}) int_0^t f).
double riccati_service_cdf(const KernelContext& ctx, double t);

/// 1 - G(t) without cancellation.
double riccati_service_survival(const KernelContext& ctx, double t);

/// G(0) = (lambda I + e^{-rho} - 1) / (lambda I).
double riccati_service_atom(const KernelContext& ctx);

/// p00(t) = (I - (1-e^{-rho}) int_0^t f) / I for the general solution.
double riccati_empty_probability(const KernelContext& ctx, double t);

/// Hazard minus lambda G from the analytic density of the general solution.
double riccati_monotony_indicator(const KernelContext& ctx, double t);

DistributionCurve riccati_service_curve(const KernelContext& ctx);

/// Inverse of riccati_service_cdf by bisection to 1e-10 in u; 0 inside the atom.
double riccati_service_quantile(const KernelContext& ctx, double u);

}  // namespace mginf
