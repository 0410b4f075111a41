#include "mginf/closed_form.hpp"

#include "mginf/error.hpp"
#include "mginf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mginf {

namespace {

// lambda + beta below this fraction of lambda is the degenerate endpoint.
constexpr double kDegenerateRate = 1e-12;
// Switch to the confluent limit when |lambda - mu| < kConfluence * lambda.
constexpr double kConfluence = 1e-9;

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

void check_beta(const QueueParams& params, double beta) {
  if (!beta_admissible(params, beta)) {
    const auto [lo, hi] = beta_bounds(params);
    throw Error(ErrorCode::BetaOutOfRange, "beta " + std::to_string(beta) + " outside [" + std::to_string(lo) +
                                               ", " + std::to_string(hi) + "]");
  }
}

void check_time(double t) {
  if (!(t >= 0.0)) {
    throw Error(ErrorCode::NegativeTime, "time must be >= 0 (got " + std::to_string(t) + ")");
  }
}

void check(const QueueParams& params, double beta, double t) {
  check_beta(params, beta);
  check_time(t);
}

double total_rate(const QueueParams& params, double beta) { return std::max(0.0, params.lambda() + beta); }

bool degenerate(const QueueParams& params, double beta) {
  return params.lambda() + beta <= kDegenerateRate * params.lambda();
}

// (1 - e^{-y}) / y for y >= 0.
double phi(double y) {
  if (y < 1e-8) return 1.0 - 0.5 * y;
  return -std::expm1(-y) / y;
}

// 1 - e^{-mu t} - beta (e^{-mu t} - e^{-lambda t}) / (lambda - mu), rearranged
// so that neither the difference of exponentials nor the division cancels.
double cycle_cdf_stable(double lambda, double beta, double mu, double t) {
  const double gap = lambda - mu;
  if (std::abs(gap) < kConfluence * lambda) {
    return clamp01(1.0 - (1.0 + lambda * t) * std::exp(-lambda * t));
  }
  const double slow = std::min(lambda, mu);
  const double mixed = t * std::exp(-slow * t) * phi(std::abs(gap) * t);
  return clamp01(-std::expm1(-mu * t) - beta * mixed);
}

}  // namespace

double service_cdf(const QueueParams& params, double beta, double t) {
  check(params, beta, t);
  if (degenerate(params, beta)) return 1.0;
  const double lambda = params.lambda();
  const double q = params.one_minus_exp_neg_rho();
  const double r = total_rate(params, beta);
  const double x = std::exp(-r * t);
  return clamp01(1.0 - q * r * x / (lambda * params.exp_neg_rho() + lambda * q * x));
}

double service_atom(const QueueParams& params, double beta) {
  check_beta(params, beta);
  if (degenerate(params, beta)) return 1.0;
  const double q = params.one_minus_exp_neg_rho();
  return clamp01(1.0 - q * total_rate(params, beta) / params.lambda());
}

double service_quantile(const QueueParams& params, double beta, double u) {
  check_beta(params, beta);
  if (!(u >= 0.0 && u < 1.0)) {
    throw Error(ErrorCode::ProbabilityOutOfRange, "u must lie in [0, 1) (got " + std::to_string(u) + ")");
  }
  if (u <= service_atom(params, beta)) return 0.0;
  const double lambda = params.lambda();
  const double r = total_rate(params, beta);
  const double em1 = std::expm1(params.rho());
  const double tail = lambda * (1.0 - u);
  // t = ln(e^rho (1-e^{-rho}) (r - tail) / tail) / r, written as log1p.
  const double excess = (em1 * r - (em1 + 1.0) * tail) / tail;
  return std::max(0.0, std::log1p(excess) / r);
}

double busy_period_cdf(const QueueParams& params, double beta, double t) {
  check(params, beta, t);
  if (degenerate(params, beta)) return 1.0;
  const double q = params.one_minus_exp_neg_rho();
  const double r = total_rate(params, beta);
  const double mu = params.exp_neg_rho() * r;
  return clamp01(1.0 - q * r / params.lambda() * std::exp(-mu * t));
}

double busy_cycle_cdf(const QueueParams& params, double beta, double t) {
  check(params, beta, t);
  const double lambda = params.lambda();
  if (degenerate(params, beta)) return clamp01(-std::expm1(-lambda * t));
  const double mu = params.exp_neg_rho() * total_rate(params, beta);
  return cycle_cdf_stable(lambda, beta, mu, t);
}

double empty_probability(const QueueParams& params, double beta, double t) {
  check(params, beta, t);
  if (degenerate(params, beta)) return 1.0;
  const double r = total_rate(params, beta);
  return clamp01(params.exp_neg_rho() + params.one_minus_exp_neg_rho() * std::exp(-r * t));
}

double busy_start_empty_probability(const QueueParams& params, double beta, double t) {
  return empty_probability(params, beta, t) * service_cdf(params, beta, t);
}

double monotony_indicator(const QueueParams& params, double beta, double t) {
  check(params, beta, t);
  if (degenerate(params, beta)) {
    throw Error(ErrorCode::DegenerateDistribution, "service law is a point mass at 0; no density");
  }
  const double lambda = params.lambda();
  const double e = params.exp_neg_rho();
  const double q = params.one_minus_exp_neg_rho();
  const double r = total_rate(params, beta);
  const double x = std::exp(-r * t);
  const double den = e + q * x;
  // g = q r^2 e x / (lambda den^2) and 1 - G = q r x / (lambda den).
  const double hazard = r * e / den;
  const double cdf = 1.0 - q * r * x / (lambda * den);
  return hazard - lambda * cdf;
}

EnvelopeBounds envelope_bounds(const QueueParams& params, double t) {
  check_time(t);
  const double lambda = params.lambda();
  const double hi = beta_bounds(params).hi;
  EnvelopeBounds b{};
  b.bp_floor = -std::expm1(-hi * t);
  b.cycle_ceiling = -std::expm1(-lambda * t);
  // The floor is the cycle CDF of the upper endpoint, whose busy-period rate is hi.
  b.cycle_floor = cycle_cdf_stable(lambda, hi, hi, t);
  return b;
}

double distribution_mean(const std::function<double(double)>& cdf, double tail_rate) {
  const auto survival = [&](double t) { return 1.0 - cdf(t); };
  if (survival(0.0) <= 0.0) return 0.0;
  double horizon = 8.0 / tail_rate;
  for (int i = 0; i < 64 && survival(horizon) / tail_rate > 1e-10; ++i) horizon *= 2.0;

  // One adaptive call: its tolerance is relative to the whole integral, so the
  // roundoff-level far tail does not force deep recursion.
  const double sum = quad::integrate(survival, 0.0, horizon, 1e-12, 1e-16);
  return sum + survival(horizon) / tail_rate;
}

DistributionCurve service_curve(const QueueParams& params, double beta) {
  check_beta(params, beta);
  const double r = total_rate(params, beta);
  return DistributionCurve([params, beta](double t) { return service_cdf(params, beta, t); },
                           degenerate(params, beta) ? params.lambda() : r);
}

DistributionCurve busy_period_curve(const QueueParams& params, double beta) {
  check_beta(params, beta);
  const double mu = params.exp_neg_rho() * total_rate(params, beta);
  return DistributionCurve([params, beta](double t) { return busy_period_cdf(params, beta, t); },
                           degenerate(params, beta) ? params.lambda() : mu);
}

DistributionCurve busy_cycle_curve(const QueueParams& params, double beta) {
  check_beta(params, beta);
  const double mu = params.exp_neg_rho() * total_rate(params, beta);
  const double rate = degenerate(params, beta) ? params.lambda() : std::min(params.lambda(), mu);
  return DistributionCurve([params, beta](double t) { return busy_cycle_cdf(params, beta, t); }, rate);
}

}  // namespace mginf
