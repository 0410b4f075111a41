#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <vector>

namespace mginf {

/// Arrival rate and traffic intensity of the M|G|inf queue. The mean service
/// time alpha = rho / lambda is derived.
class QueueParams {
 public:
  double lambda() const noexcept { return lambda_; }
  double rho() const noexcept { return rho_; }
  double alpha() const noexcept { return alpha_; }
  double exp_neg_rho() const noexcept { return exp_neg_rho_; }
  /// 1 - e^{-rho}, computed without cancellation for small rho.
  double one_minus_exp_neg_rho() const noexcept { return one_minus_exp_neg_rho_; }

  friend QueueParams validate_queue_params(double lambda, double rho);

 private:
  QueueParams(double lambda, double rho);

  double lambda_;
  double rho_;
  double alpha_;
  double exp_neg_rho_;
  double one_minus_exp_neg_rho_;
};

QueueParams validate_queue_params(double lambda, double rho);

struct BetaBounds {
  double lo;
  double hi;
};

/// Admissible range [-lambda, lambda / (e^rho - 1)] for the running average of beta.
BetaBounds beta_bounds(const QueueParams& params);

/// True when b lies in beta_bounds(params), allowing a 1e-12 relative slack at
/// both ends for rounding in the caller's computation of the endpoint.
bool beta_admissible(const QueueParams& params, double b) noexcept;

struct BetaKnot {
  double t;
  double beta;
};

/// The beta(t) function selecting a member of the Riccati service family:
/// either a constant or a piecewise-linear table held constant past its last
/// knot.
class BetaSpec {
 public:
  static BetaSpec constant(double value);
  /// Knots must start at t = 0 and be strictly increasing.
  static BetaSpec tabulated(std::vector<BetaKnot> knots);

  bool is_constant() const noexcept { return knots_.size() == 1; }
  double value(double t) const;
  /// Exact integral of beta over [0, t].
  double cumulative(double t) const;
  std::span<const BetaKnot> knots() const noexcept { return knots_; }
  double last_knot_time() const noexcept { return knots_.back().t; }
  double tail_value() const noexcept { return knots_.back().beta; }
  double max_abs() const noexcept;

 private:
  explicit BetaSpec(std::vector<BetaKnot> knots);

  std::vector<BetaKnot> knots_;
  std::vector<double> cumulative_at_knot_;
};

/// Reads a two-column `t,beta` CSV with a header row.
BetaSpec parse_beta_csv(std::istream& in);
BetaSpec read_beta_csv(const std::filesystem::path& path);

/// A BetaSpec certified against the running-average constraint on
/// (0, t_max_checked].
class ValidatedBeta {
 public:
  const BetaSpec& spec() const noexcept { return spec_; }
  const QueueParams& params() const noexcept { return params_; }
  double t_max_checked() const noexcept { return t_max_checked_; }

  friend ValidatedBeta validate_beta(const QueueParams& params, BetaSpec spec, double t_max);

 private:
  ValidatedBeta(BetaSpec spec, QueueParams params, double t_max)
      : spec_(std::move(spec)), params_(params), t_max_checked_(t_max) {}

  BetaSpec spec_;
  QueueParams params_;
  double t_max_checked_;
};

inline constexpr int kBetaCheckPoints = 10000;

ValidatedBeta validate_beta(const QueueParams& params, BetaSpec spec, double t_max);

/// (1/t) * integral of beta over [0, t].
double running_average_beta(const ValidatedBeta& vbeta, double t);

}  // namespace mginf
