#pragma once

#include "mginf/model_params.hpp"

#include <functional>

namespace mginf {

// Constant-beta members of the Riccati service family. Every function checks
// beta against beta_bounds and throws BetaOutOfRange / NegativeTime.

/// Service CDF G(t) = 1 - (1-e^{-rho})(lambda+beta) / (lambda e^{-rho}(e^{(lambda+beta)t}-1) + lambda),
/// evaluated in an overflow-free rearrangement. G == 1 at beta = -lambda.
double service_cdf(const QueueParams& params, double beta, double t);

/// G(0), the probability of a zero-length service.
double service_atom(const QueueParams& params, double beta);

/// Analytic G^{-1}(u) for u in [0, 1); 0 inside the atom.
double service_quantile(const QueueParams& params, double beta, double u);

/// Busy-period CDF: atom G(0) plus an exponential of rate e^{-rho}(lambda+beta).
double busy_period_cdf(const QueueParams& params, double beta, double t);

/// Busy-cycle CDF, a two-exponential mixture; continuous through the
/// confluent point rho = ln 2, beta = lambda.
double busy_cycle_cdf(const QueueParams& params, double beta, double t);

/// p00(t) = exp(-lambda * int_0^t (1 - G)), which is e^{-rho} + (1-e^{-rho}) e^{-(lambda+beta)t} here.
double empty_probability(const QueueParams& params, double beta, double t);

/// p1'0(t) = p00(t) G(t): system empty at t given a busy period starts at 0.
double busy_start_empty_probability(const QueueParams& params, double beta, double t);

/// g(t)/(1-G(t)) - lambda G(t) from the analytic density. Equals beta for the
/// whole family. DegenerateDistribution at beta = -lambda.
double monotony_indicator(const QueueParams& params, double beta, double t);

struct EnvelopeBounds {
  double bp_floor;
  double cycle_floor;
  double cycle_ceiling;
};

/// Family-wide envelopes: B >= bp_floor, cycle_floor <= Z <= cycle_ceiling.
EnvelopeBounds envelope_bounds(const QueueParams& params, double t);

/// Mean of a nonnegative distribution from its CDF: adaptive quadrature of
/// 1 - F on [0, T*] plus an exponential tail (1 - F(T*)) / tail_rate, with T*
/// grown until that tail is below 1e-10.
double distribution_mean(const std::function<double(double)>& cdf, double tail_rate);

/// An evaluable CDF on [0, inf) with an explicit atom at zero. Immutable;
/// mean() is recomputed by quadrature on each call.
class DistributionCurve {
 public:
  DistributionCurve(std::function<double(double)> cdf, double tail_rate)
      : cdf_(std::move(cdf)), tail_rate_(tail_rate) {}

  double operator()(double t) const { return cdf_(t); }
  double atom_at_zero() const { return cdf_(0.0); }
  double tail_rate() const noexcept { return tail_rate_; }
  double mean() const { return distribution_mean(cdf_, tail_rate_); }
  const std::function<double(double)>& function() const noexcept { return cdf_; }

 private:
  std::function<double(double)> cdf_;
  double tail_rate_;
};

DistributionCurve service_curve(const QueueParams& params, double beta);
DistributionCurve busy_period_curve(const QueueParams& params, double beta);
DistributionCurve busy_cycle_curve(const QueueParams& params, double beta);

}  // namespace mginf
