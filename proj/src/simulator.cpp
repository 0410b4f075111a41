#include "mginf/simulator.hpp"

#include "mginf/closed_form.hpp"
#include "mginf/error.hpp"
#include "mginf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace mginf {

double sample_service(const QueueParams& params, double beta, double uniform) {
  return service_quantile(params, beta, uniform);
}

ServiceSampler ServiceSampler::constant(const QueueParams& params, double beta) {
  const double atom = service_atom(params, beta);
  return ServiceSampler([params, beta](double u) { return service_quantile(params, beta, u); }, atom);
}

ServiceSampler ServiceSampler::riccati(const KernelContext& ctx) {
  auto shared = std::make_shared<const KernelContext>(ctx);
  return ServiceSampler([shared](double u) { return riccati_service_quantile(*shared, u); },
                        riccati_service_atom(ctx));
}

namespace {

struct CycleDraw {
  double busy;
  double idle;
};

CycleDraw simulate_cycle(double lambda, const ServiceSampler& sampler, SplitMix64& rng) {
  double last_departure = sampler(rng.uniform());
  double clock = 0.0;
  for (;;) {
    clock += rng.exponential(lambda);
    if (clock >= last_departure) break;
    last_departure = std::max(last_departure, clock + sampler(rng.uniform()));
  }
  return {last_departure, rng.exponential(lambda)};
}

}  // namespace

CycleSamples run_cycles(const QueueParams& params, const ServiceSampler& sampler, std::size_t n_cycles,
                        std::uint64_t seed, Execution exec) {
  if (n_cycles == 0) {
    throw Error(ErrorCode::EmptySample, "need at least one cycle");
  }
  CycleSamples out;
  out.seed = seed;
  out.busy.resize(n_cycles);
  out.idle.resize(n_cycles);
  out.cycle.resize(n_cycles);
  const double lambda = params.lambda();
  const auto n = static_cast<std::ptrdiff_t>(n_cycles);

  auto one = [&](std::ptrdiff_t i) {
    SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(i));
    const CycleDraw d = simulate_cycle(lambda, sampler, rng);
    out.busy[i] = d.busy;
    out.idle[i] = d.idle;
    out.cycle[i] = d.busy + d.idle;
  };

  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 256)
    for (std::ptrdiff_t i = 0; i < n; ++i) one(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) one(i);
  }
  return out;
}

CycleSamples run_cycles(const QueueParams& params, double beta, std::size_t n_cycles, std::uint64_t seed,
                        Execution exec) {
  return run_cycles(params, ServiceSampler::constant(params, beta), n_cycles, seed, exec);
}

// --- empirical CDF and KS ----------------------------------------------------

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) {
    throw Error(ErrorCode::EmptySample, "empirical CDF of an empty sample");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double t) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::left_limit(double t) const {
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalCdf empirical_cdf(std::vector<double> samples) { return EmpiricalCdf(std::move(samples)); }

double ks_distance(const EmpiricalCdf& emp, const std::function<double(double)>& analytic) {
  const auto xs = emp.sorted();
  const double n = static_cast<double>(xs.size());
  double sup = 0.0;
  std::size_t i = 0;
  while (i < xs.size()) {
    const double x = xs[i];
    std::size_t j = i;
    while (j < xs.size() && xs[j] == x) ++j;
    const double above = static_cast<double>(j) / n;
    const double below = static_cast<double>(i) / n;
    sup = std::max(sup, std::abs(above - analytic(x)));
    if (x > 0.0) {
      sup = std::max(sup, std::abs(below - analytic(std::nextafter(x, 0.0))));
    }
    i = j;
  }
  return sup;
}

// --- summaries ---------------------------------------------------------------

namespace {

struct Moments {
  double mean;
  double stderr_of_mean;
};

Moments moments(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double sum = 0.0;
  for (double v : x) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

CycleSummary cycle_summary(const CycleSamples& samples) {
  if (samples.n() < 2) {
    throw Error(ErrorCode::EmptySample, "cycle summary needs at least two cycles");
  }
  const Moments b = moments(samples.busy);
  const Moments i = moments(samples.idle);
  const Moments c = moments(samples.cycle);
  return {b.mean, i.mean, c.mean, b.stderr_of_mean, i.stderr_of_mean, c.stderr_of_mean};
}

double sample_correlation(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace mginf
