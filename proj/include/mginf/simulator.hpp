#pragma once

#include "mginf/execution.hpp"
#include "mginf/model_params.hpp"
#include "mginf/riccati_general.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace mginf {

/// Inverse-transform draw from the constant-beta service law.
double sample_service(const QueueParams& params, double beta, double uniform);

/// Maps a uniform on [0, 1) to a service time: closed-form quantile for
/// constant beta, bisection on the general Riccati CDF otherwise.
class ServiceSampler {
 public:
  static ServiceSampler constant(const QueueParams& params, double beta);
  static ServiceSampler riccati(const KernelContext& ctx);

  double operator()(double uniform) const { return quantile_(uniform); }
  double atom() const noexcept { return atom_; }

 private:
  ServiceSampler(std::function<double(double)> quantile, double atom)
      : quantile_(std::move(quantile)), atom_(atom) {}

  std::function<double(double)> quantile_;
  double atom_;
};

/// Busy, idle and busy+idle durations of n independent regenerative cycles.
struct CycleSamples {
  std::vector<double> busy;
  std::vector<double> idle;
  std::vector<double> cycle;
  std::uint64_t seed = 0;

  std::size_t n() const noexcept { return busy.size(); }
};

/// Simulates n busy cycles. Each busy period starts with an arrival to an
/// empty system; with infinitely many servers it ends at the largest departure
/// epoch E of its customers, i.e. at the first arrival gap that overshoots E.
/// Idle periods are fresh Exp(lambda) draws. Cycle i uses its own substream, so
/// the result depends only on (params, sampler, n, seed).
CycleSamples run_cycles(const QueueParams& params, const ServiceSampler& sampler, std::size_t n_cycles,
                        std::uint64_t seed, Execution exec = Execution::Parallel);

CycleSamples run_cycles(const QueueParams& params, double beta, std::size_t n_cycles, std::uint64_t seed,
                        Execution exec = Execution::Parallel);

/// Right-continuous empirical CDF.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double t) const;
  /// F(t^-).
  double left_limit(double t) const;
  std::span<const double> sorted() const noexcept { return sorted_; }
  std::size_t size() const noexcept { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

EmpiricalCdf empirical_cdf(std::vector<double> samples);

/// sup_x |Fhat - F| over both one-sided limits at every sample point. At x = 0
/// only Fhat(0) vs F(0) is compared, so an atom at the origin is matched
/// against the empirical zero fraction. F is only called at t >= 0.
double ks_distance(const EmpiricalCdf& emp, const std::function<double(double)>& analytic);

struct CycleSummary {
  double mean_busy;
  double mean_idle;
  double mean_cycle;
  double stderr_busy;
  double stderr_idle;
  double stderr_cycle;
};

CycleSummary cycle_summary(const CycleSamples& samples);

/// Pearson correlation; 0 when either sample has zero variance.
double sample_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace mginf
