#include "mginf/transform_series.hpp"

#include "mginf/error.hpp"
#include "mginf/kernels.hpp"
#include "mginf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mginf {

namespace {

void convolve(std::span<const double> a, std::span<const double> b, double h, std::span<double> out,
              Execution exec) {
  if (exec == Execution::Parallel) {
    kernels::convolve_trapezoid_omp(a, b, h, out);
  } else {
    kernels::convolve_trapezoid_serial(a, b, h, out);
  }
}

void check_grid(const KernelContext& ctx, const GridSpec& grid) {
  if (!(grid.step > 0.0) || !(grid.t_max > 0.0)) {
    throw Error(ErrorCode::NonPositiveTime, "grid step and horizon must be > 0");
  }
  const double rate = grid.step * (ctx.params().lambda() + ctx.beta_max_abs());
  if (!(rate < kMaxStepRate)) {
    throw Error(ErrorCode::StepTooCoarse, "h * (lambda + max|beta|) = " + std::to_string(rate) +
                                              " must be below " + std::to_string(kMaxStepRate));
  }
}

}  // namespace

// --- GridFunction -----------------------------------------------------------

GridFunction::GridFunction(double step, std::vector<double> values, GridKind kind)
    : step_(step), values_(std::move(values)), kind_(kind) {
  if (!(step_ > 0.0) || !std::isfinite(step_)) {
    throw Error(ErrorCode::NonPositiveTime, "grid step must be > 0");
  }
  if (values_.empty()) {
    throw Error(ErrorCode::EmptySample, "grid function needs at least one sample");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::NonFiniteParameter, "grid function values must be finite");
    }
  }
}

double GridFunction::at(double t) const {
  if (t <= 0.0) return values_.front();
  const double x = t / step_;
  const auto k = static_cast<std::size_t>(x);
  if (k + 1 >= values_.size()) return values_.back();
  const double w = x - static_cast<double>(k);
  return values_[k] + w * (values_[k + 1] - values_[k]);
}

bool GridFunction::is_nondecreasing(double tol) const {
  for (std::size_t k = 1; k < values_.size(); ++k) {
    if (values_[k] < values_[k - 1] - tol * (1.0 + std::abs(values_[k]))) return false;
  }
  return true;
}

std::size_t GridSpec::points() const {
  const double n = t_max / step;
  const double rounded = std::round(n);
  const double cells = std::abs(n - rounded) < 1e-9 * std::max(1.0, n) ? rounded : std::floor(n);
  return static_cast<std::size_t>(cells) + 1;
}

GridSpec GridSpec::default_for(const QueueParams& params) {
  const double step = std::min(0.005 / params.lambda(), params.alpha() / 200.0);
  return {step, 12.0 * std::expm1(params.rho()) / params.lambda()};
}

GridFunction grid_convolve(const GridFunction& a, const GridFunction& b, Execution exec) {
  if (a.step() != b.step()) {
    throw Error(ErrorCode::StepMismatch, "convolution needs equal grid steps");
  }
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<double> out(n);
  convolve(a.values().first(n), b.values().first(n), a.step(), out, exec);
  return GridFunction(a.step(), std::move(out), b.kind());
}

// --- transforms -------------------------------------------------------------

LaplacePoint busy_period_laplace_from_service(const QueueParams& params,
                                              const std::function<double(double)>& service_cdf, double s,
                                              std::span<const double> breakpoints) {
  if (!(s >= 0.0)) {
    throw Error(ErrorCode::NegativeS, "Laplace variable must be >= 0");
  }
  if (s == 0.0) return {0.0, 1.0};
  const double lambda = params.lambda();
  const auto survival = [&](double v) { return 1.0 - service_cdf(v); };

  const double horizon = std::max(-std::log(1e-14 * s) / s, 10.0 * params.alpha());
  const double width = 0.25 * std::min(params.alpha(), 1.0 / (lambda + s));
  const auto panels = static_cast<std::size_t>(std::ceil(horizon / width));
  std::vector<double> edges;
  for (std::size_t k = 0; k <= panels; ++k) {
    edges.push_back(horizon * static_cast<double>(k) / static_cast<double>(panels));
  }
  for (double knot : breakpoints) {
    if (knot > 0.0 && knot < horizon) edges.push_back(knot);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  double outer = 0.0;
  double load = 0.0;  // lambda * int_0^a (1 - G) at the panel start a
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double a = edges[k];
    const double b = edges[k + 1];
    const auto integrand = [&](double t) {
      return std::exp(-s * t - load - lambda * quad::gauss10(survival, a, t));
    };
    outer += quad::gauss10(integrand, a, b);
    load += lambda * quad::gauss10(survival, a, b);
  }
  outer += std::exp(-load - s * horizon) / s;
  return {s, 1.0 + (s - 1.0 / outer) / lambda};
}

LaplacePoint busy_period_laplace_general(const KernelContext& ctx, double s) {
  if (!(s >= 0.0)) {
    throw Error(ErrorCode::NegativeS, "Laplace variable must be >= 0");
  }
  if (ctx.is_degenerate()) return {s, 1.0};
  const QueueParams& p = ctx.params();
  const double lambda = p.lambda();
  const double no_atom = p.one_minus_exp_neg_rho() / (lambda * ctx.total_integral());
  const double lf = ctx.kernel_laplace(s);
  return {s, (1.0 - (s + lambda) * no_atom * lf) / (1.0 - lambda * no_atom * lf)};
}

LaplacePoint busy_cycle_laplace(const QueueParams& params, const LaplacePoint& bp) {
  return {bp.s, params.lambda() / (params.lambda() + bp.s) * bp.value};
}

double laplace_of_cdf_grid(const GridFunction& cdf, double s) {
  if (!(s >= 0.0)) {
    throw Error(ErrorCode::NegativeS, "Laplace variable must be >= 0");
  }
  if (s == 0.0) return 1.0;
  const auto v = cdf.values();
  double acc = 0.5 * v.front() + 0.5 * v.back() * std::exp(-s * cdf.t_max());
  for (std::size_t k = 1; k + 1 < v.size(); ++k) acc += std::exp(-s * cdf.time(k)) * v[k];
  return s * cdf.step() * acc + std::exp(-s * cdf.t_max());
}

// --- series -----------------------------------------------------------------

std::size_t series_truncation_order(const QueueParams& params, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) {
    throw Error(ErrorCode::ProbabilityOutOfRange, "series tolerance must lie in (0, 1)");
  }
  const double q = params.one_minus_exp_neg_rho();
  const double scale = 1.0 / params.exp_neg_rho();  // 1 / (1 - q)
  std::size_t n = 0;
  double remainder = q * scale;
  while (remainder >= tol && n < 100 * kMaxSeriesTerms) {
    remainder *= q;
    ++n;
  }
  return n;
}

GridFunction busy_period_cdf_series(const KernelContext& ctx, const GridSpec& grid, double tol,
                                    Execution exec) {
  check_grid(ctx, grid);
  const std::size_t n = grid.points();
  const double h = grid.step;
  if (ctx.is_degenerate()) {
    return GridFunction(h, std::vector<double>(n, 1.0), GridKind::Cdf);
  }
  const std::size_t terms = series_truncation_order(ctx.params(), tol);
  if (terms > kMaxSeriesTerms) {
    throw Error(ErrorCode::TruncationBudgetExceeded,
                "series needs " + std::to_string(terms) + " terms, budget is " + std::to_string(kMaxSeriesTerms));
  }
  const QueueParams& p = ctx.params();
  const double lambda = p.lambda();
  const double no_atom = p.one_minus_exp_neg_rho() / (lambda * ctx.total_integral());
  const double c = lambda * no_atom;

  std::vector<double> f(n);
  std::vector<double> bracket(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = h * static_cast<double>(k);
    f[k] = ctx.kernel(t);
    bracket[k] = 1.0 - no_atom * (f[k] + lambda * ctx.kernel_integral(t));
  }

  // resolvent = sum_{m=1..terms} c^m f^{*m}
  std::vector<double> resolvent(n, 0.0);
  std::vector<double> power = f;
  std::vector<double> next(n);
  double weight = c;
  for (std::size_t m = 1; m <= terms; ++m) {
    for (std::size_t k = 0; k < n; ++k) resolvent[k] += weight * power[k];
    if (m == terms) break;
    convolve(f, power, h, next, exec);
    power.swap(next);
    weight *= c;
  }

  std::vector<double> out(n);
  convolve(bracket, resolvent, h, out, exec);
  for (std::size_t k = 0; k < n; ++k) out[k] += bracket[k];
  return GridFunction(h, std::move(out), GridKind::Cdf);
}

GridFunction busy_cycle_from_busy_period(const QueueParams& params, const GridFunction& busy_period) {
  // Z(t) = int_0^t lambda e^{-lambda (t-u)} B(u) du, integrated exactly for B
  // linear on each cell:  Z_{k+1} = e^{-a} Z_k + w0 B_k + w1 B_{k+1},  a = lambda h.
  const double a = params.lambda() * busy_period.step();
  const double decay = std::exp(-a);
  const double mass = -std::expm1(-a);
  const double w0 = (mass - a * decay) / a;
  const double w1 = mass - w0;
  const auto b = busy_period.values();
  std::vector<double> out(b.size());
  out[0] = 0.0;
  for (std::size_t k = 0; k + 1 < b.size(); ++k) out[k + 1] = decay * out[k] + w0 * b[k] + w1 * b[k + 1];
  return GridFunction(busy_period.step(), std::move(out), GridKind::Cdf);
}

GridFunction busy_cycle_cdf_series(const KernelContext& ctx, const GridSpec& grid, double tol, Execution exec) {
  return busy_cycle_from_busy_period(ctx.params(), busy_period_cdf_series(ctx, grid, tol, exec));
}
}  // namespace mginf
