#include "mginf/model_params.hpp"

#include "mginf/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace mginf {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::NonFiniteParameter: return "NonFiniteParameter";
    case ErrorCode::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::NonPositiveTime: return "NonPositiveTime";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorCode::DivergentKernelIntegral: return "DivergentKernelIntegral";
    case ErrorCode::StepMismatch: return "StepMismatch";
    case ErrorCode::NegativeS: return "NegativeS";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::TruncationBudgetExceeded: return "TruncationBudgetExceeded";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

constexpr double kBoundSlack = 1e-12;

}  // namespace

QueueParams::QueueParams(double lambda, double rho)
    : lambda_(lambda),
      rho_(rho),
      alpha_(rho / lambda),
      exp_neg_rho_(std::exp(-rho)),
      one_minus_exp_neg_rho_(-std::expm1(-rho)) {}

QueueParams validate_queue_params(double lambda, double rho) {
  if (!std::isfinite(lambda) || !std::isfinite(rho)) {
    throw Error(ErrorCode::NonFiniteParameter,
                "lambda and rho must be finite (got " + format_double(lambda) + ", " +
                    format_double(rho) + ")");
  }
  if (lambda <= 0.0) {
    throw Error(ErrorCode::NonPositiveParameter, "lambda must be > 0 (got " + format_double(lambda) + ")");
  }
  if (rho <= 0.0) {
    throw Error(ErrorCode::NonPositiveParameter, "rho must be > 0 (got " + format_double(rho) + ")");
  }
  return QueueParams(lambda, rho);
}

BetaBounds beta_bounds(const QueueParams& params) {
  return {-params.lambda(), params.lambda() / std::expm1(params.rho())};
}

bool beta_admissible(const QueueParams& params, double b) noexcept {
  const auto [lo, hi] = beta_bounds(params);
  return std::isfinite(b) && b >= lo - kBoundSlack * std::abs(lo) && b <= hi + kBoundSlack * hi;
}

// --- BetaSpec ---------------------------------------------------------------

BetaSpec::BetaSpec(std::vector<BetaKnot> knots) : knots_(std::move(knots)) {
  cumulative_at_knot_.resize(knots_.size());
  cumulative_at_knot_[0] = 0.0;
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    const double dt = knots_[i].t - knots_[i - 1].t;
    cumulative_at_knot_[i] = cumulative_at_knot_[i - 1] + 0.5 * dt * (knots_[i].beta + knots_[i - 1].beta);
  }
}

BetaSpec BetaSpec::constant(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonFiniteParameter, "beta must be finite");
  }
  return BetaSpec({{0.0, value}});
}

BetaSpec BetaSpec::tabulated(std::vector<BetaKnot> knots) {
  if (knots.empty()) {
    throw Error(ErrorCode::EmptyTable, "beta table has no knots");
  }
  if (knots.front().t != 0.0) {
    throw Error(ErrorCode::InvalidTable, "first beta knot must be at t = 0");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].t) || !std::isfinite(knots[i].beta)) {
      throw Error(ErrorCode::InvalidTable, "beta table contains a non-finite value");
    }
    if (i > 0 && !(knots[i].t > knots[i - 1].t)) {
      throw Error(ErrorCode::InvalidTable, "beta knot abscissae must be strictly increasing");
    }
  }
  return BetaSpec(std::move(knots));
}

double BetaSpec::value(double t) const {
  if (t >= knots_.back().t) return knots_.back().beta;
  // First knot with knot.t > t; t >= 0 so it is never the first.
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                   [](double x, const BetaKnot& k) { return x < k.t; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (t - lo.t) / (hi.t - lo.t);
  return lo.beta + w * (hi.beta - lo.beta);
}

double BetaSpec::cumulative(double t) const {
  if (t >= knots_.back().t) {
    return cumulative_at_knot_.back() + knots_.back().beta * (t - knots_.back().t);
  }
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                   [](double x, const BetaKnot& k) { return x < k.t; });
  const auto i = static_cast<std::size_t>(it - knots_.begin()) - 1;
  const double dt = t - knots_[i].t;
  return cumulative_at_knot_[i] + 0.5 * dt * (knots_[i].beta + value(t));
}

double BetaSpec::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& k : knots_) m = std::max(m, std::abs(k.beta));
  return m;
}

BetaSpec parse_beta_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::EmptyTable, "beta file is empty");
  }
  std::vector<BetaKnot> knots;
  std::size_t line_no = 1;
  auto parse_field = [&](std::string_view field) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
      field.remove_suffix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
      throw Error(ErrorCode::InvalidTable,
                  "cannot parse number '" + std::string(field) + "' on line " + std::to_string(line_no));
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::InvalidTable, "expected 't,beta' on line " + std::to_string(line_no));
    }
    const std::string_view view(line);
    knots.push_back({parse_field(view.substr(0, comma)), parse_field(view.substr(comma + 1))});
  }
  return BetaSpec::tabulated(std::move(knots));
}

BetaSpec read_beta_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoFailure, "cannot open beta file " + path.string());
  }
  return parse_beta_csv(in);
}

// --- validation -------------------------------------------------------------

ValidatedBeta validate_beta(const QueueParams& params, BetaSpec spec, double t_max) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw Error(ErrorCode::NonPositiveTime, "t_max must be > 0");
  }
  const auto [lo, hi] = beta_bounds(params);
  if (spec.is_constant()) {
    const double b = spec.tail_value();
    if (!beta_admissible(params, b)) {
      throw Error(ErrorCode::BetaOutOfRange,
                  "beta " + format_double(b) + " outside admissible range [" + format_double(lo) + ", " +
                      format_double(hi) + "]");
    }
    return ValidatedBeta(std::move(spec), params, t_max);
  }
  const double step = t_max / kBetaCheckPoints;
  for (int k = 1; k <= kBetaCheckPoints; ++k) {
    const double t = step * k;
    const double avg = spec.cumulative(t) / t;
    if (!beta_admissible(params, avg)) {
      throw Error(ErrorCode::BetaOutOfRange,
                  "running average of beta is " + format_double(avg) + " at t = " + format_double(t) +
                      ", outside admissible range [" + format_double(lo) + ", " + format_double(hi) + "]");
    }
  }
  return ValidatedBeta(std::move(spec), params, t_max);
}

double running_average_beta(const ValidatedBeta& vbeta, double t) {
  if (!(t > 0.0)) {
    throw Error(ErrorCode::NonPositiveTime, "running average needs t > 0");
  }
  return vbeta.spec().cumulative(t) / t;
}

}  // namespace mginf
