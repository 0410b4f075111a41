#include "mginf/riccati_general.hpp"

#include "mginf/error.hpp"
#include "mginf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace mginf {

double cumulative_beta(const ValidatedBeta& vbeta, double t) {
  if (!(t >= 0.0)) {
    throw Error(ErrorCode::NegativeTime, "cumulative beta needs t >= 0");
  }
  return vbeta.spec().cumulative(t);
}

KernelContext KernelContext::degenerate(const QueueParams& params) {
  KernelContext ctx(params);
  ctx.total_ = std::numeric_limits<double>::infinity();
  return ctx;
}

double KernelContext::beta(double t) const {
  if (is_degenerate()) return -params_.lambda();
  return vbeta_->spec().value(t);
}

double KernelContext::beta_max_abs() const {
  if (is_degenerate()) return params_.lambda();
  return vbeta_->spec().max_abs();
}

double KernelContext::kernel(double t) const {
  if (is_degenerate()) return 1.0;
  return std::exp(-params_.lambda() * t - vbeta_->spec().cumulative(t));
}

// int_a^b f for 0 <= a <= b <= horizon, one Gauss panel per stretch between knots.
double KernelContext::integrate_kernel(double a, double b) const {
  const auto f = [this](double t) { return kernel(t); };
  double sum = 0.0;
  double lo = a;
  for (const auto& knot : vbeta_->spec().knots()) {
    if (knot.t <= lo) continue;
    if (knot.t >= b) break;
    sum += quad::gauss10(f, lo, knot.t);
    lo = knot.t;
  }
  return sum + quad::gauss10(f, lo, b);
}

double KernelContext::kernel_integral(double t) const {
  if (!(t >= 0.0)) {
    throw Error(ErrorCode::NegativeTime, "kernel integral needs t >= 0");
  }
  if (is_degenerate()) return t;
  if (t >= horizon_) {
    const double head = cumulative_.empty() ? 0.0 : cumulative_.back();
    return head + kernel(horizon_) * -std::expm1(-tail_rate_ * (t - horizon_)) / tail_rate_;
  }
  const auto k = std::min(static_cast<std::size_t>(t / cache_step_), cumulative_.size() - 2);
  const double tk = cache_step_ * static_cast<double>(k);
  return cumulative_[k] + integrate_kernel(tk, t);
}

double KernelContext::kernel_laplace(double s) const {
  if (!(s >= 0.0)) {
    throw Error(ErrorCode::NegativeS, "Laplace variable must be >= 0");
  }
  if (is_degenerate()) return std::numeric_limits<double>::infinity();
  double head = 0.0;
  if (horizon_ > 0.0) {
    const auto g = [this, s](double t) { return std::exp(-s * t) * kernel(t); };
    double lo = 0.0;
    for (const auto& knot : vbeta_->spec().knots()) {
      if (knot.t <= lo) continue;
      head += quad::integrate(g, lo, knot.t);
      lo = knot.t;
    }
  }
  return head + kernel(horizon_) * std::exp(-s * horizon_) / (s + tail_rate_);
}

KernelContext build_kernel(const ValidatedBeta& vbeta) {
  const QueueParams& params = vbeta.params();
  const BetaSpec& spec = vbeta.spec();
  const double tail_rate = params.lambda() + spec.tail_value();
  if (!(tail_rate > 0.0)) {
    throw Error(ErrorCode::DivergentKernelIntegral,
                "kernel tail rate lambda + beta_tail = " + std::to_string(tail_rate) +
                    " is not positive; int_0^inf f diverges");
  }
  KernelContext ctx(params);
  ctx.vbeta_ = vbeta;
  ctx.tail_rate_ = tail_rate;
  ctx.horizon_ = spec.last_knot_time();
  if (ctx.horizon_ > 0.0) {
    const double target = 1e-3 * params.alpha();
    const auto cells = static_cast<std::size_t>(std::max(1.0, std::ceil(ctx.horizon_ / target)));
    ctx.cache_step_ = ctx.horizon_ / static_cast<double>(cells);
    ctx.cumulative_.resize(cells + 1);
    ctx.cumulative_[0] = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
      const double a = ctx.cache_step_ * static_cast<double>(k);
      const double b = k + 1 == cells ? ctx.horizon_ : ctx.cache_step_ * static_cast<double>(k + 1);
      ctx.cumulative_[k + 1] = ctx.cumulative_[k] + ctx.integrate_kernel(a, b);
    }
  }
  const double head = ctx.cumulative_.empty() ? 0.0 : ctx.cumulative_.back();
  ctx.total_ = head + ctx.kernel(ctx.horizon_) / tail_rate;
  return ctx;
}

KernelContext make_kernel(const ValidatedBeta& vbeta) {
  const double lambda = vbeta.params().lambda();
  const auto knots = vbeta.spec().knots();
  const bool all_at_floor = std::all_of(knots.begin(), knots.end(), [lambda](const BetaKnot& k) {
    return k.beta + lambda <= 1e-12 * lambda;
  });
  if (all_at_floor) return KernelContext::degenerate(vbeta.params());
  return build_kernel(vbeta);
}

double riccati_service_survival(const KernelContext& ctx, double t) {
  if (!(t >= 0.0)) {
    throw Error(ErrorCode::NegativeTime, "time must be >= 0");
  }
  if (ctx.is_degenerate()) return 0.0;
  const QueueParams& p = ctx.params();
  const double q = p.one_minus_exp_neg_rho();
  const double denom = ctx.total_integral() - q * ctx.kernel_integral(t);
  return std::clamp(q * ctx.kernel(t) / (p.lambda() * denom), 0.0, 1.0);
}

double riccati_service_cdf(const KernelContext& ctx, double t) {
  return 1.0 - riccati_service_survival(ctx, t);
}

double riccati_service_atom(const KernelContext& ctx) {
  if (ctx.is_degenerate()) return 1.0;
  const QueueParams& p = ctx.params();
  const double li = p.lambda() * ctx.total_integral();
  return std::clamp((li + p.exp_neg_rho() - 1.0) / li, 0.0, 1.0);
}

double riccati_empty_probability(const KernelContext& ctx, double t) {
  if (!(t >= 0.0)) {
    throw Error(ErrorCode::NegativeTime, "time must be >= 0");
  }
  if (ctx.is_degenerate()) return 1.0;
  const double q = ctx.params().one_minus_exp_neg_rho();
  return (ctx.total_integral() - q * ctx.kernel_integral(t)) / ctx.total_integral();
}

double riccati_monotony_indicator(const KernelContext& ctx, double t) {
  if (ctx.is_degenerate()) {
    throw Error(ErrorCode::DegenerateDistribution, "service law is a point mass at 0; no density");
  }
  const QueueParams& p = ctx.params();
  const double q = p.one_minus_exp_neg_rho();
  const double denom = ctx.total_integral() - q * ctx.kernel_integral(t);
  // -d/dt log(1 - G) = (lambda + beta(t)) - q f / (I - q F).
  const double hazard = p.lambda() + ctx.beta(t) - q * ctx.kernel(t) / denom;
  return hazard - p.lambda() * riccati_service_cdf(ctx, t);
}

DistributionCurve riccati_service_curve(const KernelContext& ctx) {
  auto shared = std::make_shared<const KernelContext>(ctx);
  const double rate = ctx.is_degenerate() ? ctx.params().lambda() : ctx.tail_rate();
  return DistributionCurve([shared](double t) { return riccati_service_cdf(*shared, t); }, rate);
}

double riccati_service_quantile(const KernelContext& ctx, double u) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw Error(ErrorCode::ProbabilityOutOfRange, "u must lie in [0, 1)");
  }
  if (u <= riccati_service_atom(ctx)) return 0.0;
  double lo = 0.0;
  double hi = std::max(ctx.horizon(), ctx.params().alpha());
  while (riccati_service_cdf(ctx, hi) < u) hi *= 2.0;
  // Bisect until the CDF bracket is within 1e-10 in u.
  double f_lo = riccati_service_atom(ctx);
  double f_hi = riccati_service_cdf(ctx, hi);
  for (int i = 0; i < 200 && f_hi - f_lo >= 1e-10; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = riccati_service_cdf(ctx, mid);
    if (f_mid < u) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace mginf
