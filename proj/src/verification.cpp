#include "mginf/verification.hpp"

#include "mginf/closed_form.hpp"
#include "mginf/error.hpp"
#include "mginf/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

namespace mginf {

std::string_view to_string(CheckStatus status) noexcept {
  switch (status) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "SKIPPED";
  }
  return "?";
}

namespace {

constexpr std::array<double, 5> kTransformPoints{0.1, 0.5, 1.0, 2.0, 5.0};

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

CheckResult bounded(std::string name, double value, double limit) {
  return {std::move(name), value < limit ? CheckStatus::Pass : CheckStatus::Fail,
          fmt("value=%.6g limit=%.3g", value, limit)};
}

CheckResult skipped(std::string name, std::string why) {
  return {std::move(name), CheckStatus::Skipped, std::move(why)};
}

double relative(double value, double target) { return std::abs(value - target) / std::abs(target); }

double sup_distance(const GridFunction& grid, const std::function<double(double)>& exact) {
  double sup = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) sup = std::max(sup, std::abs(grid[k] - exact(grid.time(k))));
  return sup;
}

struct EnvelopeSlack {
  double floors = std::numeric_limits<double>::infinity();   // B - bp_floor, Z - cycle_floor
  double ceiling = std::numeric_limits<double>::infinity();  // cycle_ceiling - Z
};

// Minimum slack of each envelope over t = k * step; negative means violated.
EnvelopeSlack envelope_slack(const QueueParams& p, const std::function<double(double)>& busy,
                             const std::function<double(double)>& cycle, std::size_t points, double step) {
  EnvelopeSlack slack;
  for (std::size_t k = 0; k < points; ++k) {
    const double t = step * static_cast<double>(k);
    const EnvelopeBounds env = envelope_bounds(p, t);
    const double z = cycle(t);
    slack.floors = std::min({slack.floors, busy(t) - env.bp_floor, z - env.cycle_floor});
    slack.ceiling = std::min(slack.ceiling, env.cycle_ceiling - z);
  }
  return slack;
}

CheckResult slack_check(std::string name, double slack, double limit) {
  return {std::move(name), slack >= limit ? CheckStatus::Pass : CheckStatus::Fail,
          fmt("min slack=%.6g limit=%.3g", slack, limit)};
}

}  // namespace

std::vector<CheckResult> verify_point(const VerifyInputs& in) {
  const KernelContext& ctx = in.ctx;
  const QueueParams& p = ctx.params();
  const double lambda = p.lambda();
  const double hi = beta_bounds(p).hi;
  const bool constant = in.constant_beta.has_value();
  const double beta = in.constant_beta.value_or(0.0);
  const bool degenerate = ctx.is_degenerate();
  std::vector<CheckResult> out;

  const GridFunction busy_series = busy_period_cdf_series(ctx, in.grid, in.series_tol);
  const GridFunction cycle_series = busy_cycle_from_busy_period(p, busy_series);

  // Closed form versus convolution series.
  if (constant) {
    out.push_back(bounded("series_vs_closed_busy_period",
                          sup_distance(busy_series, [&](double t) { return busy_period_cdf(p, beta, t); }), 1e-3));
    out.push_back(bounded("series_vs_closed_busy_cycle",
                          sup_distance(cycle_series, [&](double t) { return busy_cycle_cdf(p, beta, t); }), 1e-3));
  } else {
    out.push_back(skipped("series_vs_closed_busy_period", "no closed form for tabulated beta"));
    out.push_back(skipped("series_vs_closed_busy_cycle", "no closed form for tabulated beta"));
  }

  // Endpoint identities.
  if (constant && (degenerate || std::abs(beta - hi) <= 1e-12 * hi)) {
    double err = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double t = 0.01 * k;
      if (degenerate) {
        err = std::max({err, std::abs(busy_period_cdf(p, beta, t) - 1.0),
                        std::abs(busy_cycle_cdf(p, beta, t) + std::expm1(-lambda * t))});
      } else {
        err = std::max(err, std::abs(busy_period_cdf(p, beta, t) + std::expm1(-hi * t)));
      }
    }
    out.push_back(bounded("endpoint_identities", err, 1e-12));
  } else {
    out.push_back(skipped("endpoint_identities", "beta is not an endpoint"));
  }

  // Confluent limit of the cycle CDF near rho = ln 2, beta = lambda.
  if (constant && std::abs(lambda - p.exp_neg_rho() * (lambda + beta)) < 1e-4 * lambda) {
    double err = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double t = 0.01 * k;
      err = std::max(err, std::abs(busy_cycle_cdf(p, beta, t) - (1.0 - (1.0 + lambda * t) * std::exp(-lambda * t))));
    }
    out.push_back(bounded("confluent_cycle_limit", err, 1e-4));
  } else {
    out.push_back(skipped("confluent_cycle_limit", "not near rho = ln 2, beta = lambda"));
  }

  // General Riccati solution versus the constant-beta closed form.
  if (constant && !degenerate) {
    double err = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double t = 0.1 * k * p.alpha();
      err = std::max(err, std::abs(riccati_service_cdf(ctx, t) - service_cdf(p, beta, t)));
    }
    out.push_back(bounded("riccati_vs_closed_service_cdf", err, 1e-8));
  } else {
    out.push_back(skipped("riccati_vs_closed_service_cdf", degenerate ? "degenerate service" : "tabulated beta"));
  }

  // Atom identity lambda (1 - G(0)) I = 1 - e^{-rho}.
  if (!degenerate) {
    const double lhs = lambda * (1.0 - riccati_service_atom(ctx)) * ctx.total_integral();
    out.push_back(bounded("atom_identity", relative(lhs, p.one_minus_exp_neg_rho()), 1e-8));
  } else {
    out.push_back(skipped("atom_identity", "degenerate service"));
  }

  // Transforms.
  {
    const std::function<double(double)> service = [&](double t) { return riccati_service_cdf(ctx, t); };
    double service_vs_kernel = 0.0;
    double vs_mixture = 0.0;
    double vs_grid = 0.0;
    const double g0 = riccati_service_atom(ctx);
    const double mu = p.exp_neg_rho() * (lambda + beta);
    for (double s : kTransformPoints) {
      const double via_kernel = busy_period_laplace_general(ctx, s).value;
      service_vs_kernel = std::max(service_vs_kernel, std::abs(busy_period_laplace_from_service(p, service, s).value - via_kernel));
      if (constant && !degenerate) vs_mixture = std::max(vs_mixture, std::abs(g0 + (1.0 - g0) * mu / (s + mu) - via_kernel));
      // Beyond t_max the grid transform assumes B = 1; B >= B(t_max) there, so the
      // truncation costs at most e^{-s t_max} (1 - B(t_max)).
      const double cut = std::exp(-s * busy_series.t_max()) * (1.0 - busy_series.values().back());
      vs_grid = std::max(vs_grid, std::abs(laplace_of_cdf_grid(busy_series, s) - via_kernel) - std::max(cut, 0.0));
    }
    out.push_back(bounded("transform_service_vs_kernel", service_vs_kernel, 1e-5));
    if (constant && !degenerate) {
      out.push_back(bounded("transform_vs_mixture", vs_mixture, 1e-5));
    } else {
      out.push_back(skipped("transform_vs_mixture", "needs a non-degenerate constant beta"));
    }
    out.push_back(bounded("transform_vs_series_grid", std::max(vs_grid, 0.0), 1e-3));
  }

  // Riccati residual: dG/dt = -lambda G^2 - (beta - lambda) G + beta.
  if (!degenerate) {
    const double t_end = 4.0 * std::max(p.alpha(), ctx.horizon());
    const double h = 1e-5;
    double err = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double t = t_end * k / 100.0;
      const double g = riccati_service_cdf(ctx, t);
      const double dg = (riccati_service_cdf(ctx, t + h) - riccati_service_cdf(ctx, t - h)) / (2.0 * h);
      const double b = ctx.beta(t);
      err = std::max(err, std::abs(dg - (-lambda * g * g - (b - lambda) * g + b)));
    }
    out.push_back(bounded("riccati_residual", err, 1e-3));
  } else {
    out.push_back(skipped("riccati_residual", "degenerate service"));
  }

  // Mean identities.
  const double mean_busy_target = std::expm1(p.rho()) / lambda;
  const double mean_cycle_target = 1.0 / (p.exp_neg_rho() * lambda);
  if (!degenerate) {
    const double service_mean =
        constant ? service_curve(p, beta).mean() : riccati_service_curve(ctx).mean();
    out.push_back(bounded("mean_service", relative(service_mean, p.alpha()), constant ? 1e-6 : 1e-5));
    if (constant) {
      out.push_back(bounded("mean_busy_period", relative(busy_period_curve(p, beta).mean(), mean_busy_target), 1e-6));
      out.push_back(bounded("mean_busy_cycle", relative(busy_cycle_curve(p, beta).mean(), mean_cycle_target), 1e-6));
    } else {
      out.push_back(skipped("mean_busy_period", "no closed form for tabulated beta"));
      out.push_back(skipped("mean_busy_cycle", "no closed form for tabulated beta"));
    }
    const double ds = 1e-4;
    const double bp = busy_period_laplace_general(ctx, ds).value;
    const double cyc = busy_cycle_laplace(p, busy_period_laplace_general(ctx, ds)).value;
    out.push_back(bounded("transform_mean_busy_period", relative((1.0 - bp) / ds, mean_busy_target), 1e-2));
    out.push_back(bounded("transform_mean_busy_cycle", relative((1.0 - cyc) / ds, mean_cycle_target), 1e-2));
  } else {
    for (const char* name : {"mean_service", "mean_busy_period", "mean_busy_cycle", "transform_mean_busy_period",
                             "transform_mean_busy_cycle"}) {
      out.push_back(skipped(name, "degenerate service: busy period is 0"));
    }
  }

  // Envelope ordering. The ceiling Z <= 1 - e^{-lambda t} always holds. The
  // two floors are exponential laws with the family's common means, so they
  // can only hold at the upper endpoint (equality) and at beta = -lambda.
  if (constant) {
    const EnvelopeSlack closed = envelope_slack(
        p, [&](double t) { return busy_period_cdf(p, beta, t); }, [&](double t) { return busy_cycle_cdf(p, beta, t); },
        5000, 0.01);
    out.push_back(slack_check("bound_cycle_ceiling_closed", closed.ceiling, -1e-9));
    out.push_back(slack_check("bound_floors_closed", closed.floors, -1e-9));
  } else {
    out.push_back(skipped("bound_cycle_ceiling_closed", "no closed form for tabulated beta"));
    out.push_back(skipped("bound_floors_closed", "no closed form for tabulated beta"));
  }
  {
    const EnvelopeSlack series = envelope_slack(
        p, [&](double t) { return busy_series.at(t); }, [&](double t) { return cycle_series.at(t); },
        busy_series.size(), busy_series.step());
    out.push_back(slack_check("bound_cycle_ceiling_series", series.ceiling, -1e-3));
    out.push_back(slack_check("bound_floors_series", series.floors, -1e-3));
  }
  {
    const auto within = [](const GridFunction& g) {
      const auto v = g.values();
      return g.is_nondecreasing(1e-8) && *std::min_element(v.begin(), v.end()) >= 0.0 &&
             *std::max_element(v.begin(), v.end()) <= 1.0 + 1e-6;
    };
    const bool ok = within(busy_series) && within(cycle_series);
    out.push_back({"series_monotone", ok ? CheckStatus::Pass : CheckStatus::Fail, "tol=1e-08"});
  }

  // Monotony law: d/dt p1'0 has the sign of beta(t).
  if (!degenerate) {
    const auto p10 = [&](double t) { return riccati_empty_probability(ctx, t) * riccati_service_cdf(ctx, t); };
    int mismatches = 0;
    const double h = 1e-5;
    for (int k = 1; k <= 1000; ++k) {
      const double t = 0.01 * k;
      const double b = ctx.beta(t);
      const double d = (p10(t + h) - p10(t - h)) / (2.0 * h);
      // Central differences carry ~1e-11 of roundoff; signs below 1e-9 are noise.
      if (std::abs(b) < 1e-6) {
        if (std::abs(d) > 1e-8) ++mismatches;
      } else if (std::abs(d) > 1e-9 && (d > 0.0) != (b > 0.0)) {
        ++mismatches;
      }
    }
    out.push_back({"monotony_sign", mismatches == 0 ? CheckStatus::Pass : CheckStatus::Fail,
                   fmt("mismatches=%.0f of %.0f", mismatches, 1000)});
  } else {
    out.push_back(skipped("monotony_sign", "degenerate service"));
  }

  // Simulation.
  {
    const ServiceSampler sampler =
        constant ? ServiceSampler::constant(p, beta) : ServiceSampler::riccati(ctx);
    const CycleSamples samples = run_cycles(p, sampler, in.cycles, in.seed);
    const double n = static_cast<double>(samples.n());
    const double ks_limit = std::max(0.01, 2.5 / std::sqrt(n));
    std::function<double(double)> busy_cdf = [&](double t) { return busy_series.at(t); };
    std::function<double(double)> cycle_cdf = [&](double t) { return cycle_series.at(t); };
    if (constant) {
      busy_cdf = [&](double t) { return busy_period_cdf(p, beta, t); };
      cycle_cdf = [&](double t) { return busy_cycle_cdf(p, beta, t); };
    }
    out.push_back(bounded("ks_busy_period", ks_distance(empirical_cdf(samples.busy), busy_cdf), ks_limit));
    out.push_back(bounded("ks_busy_cycle", ks_distance(empirical_cdf(samples.cycle), cycle_cdf), ks_limit));
    out.push_back(bounded("ks_idle",
                          ks_distance(empirical_cdf(samples.idle), [&](double t) { return -std::expm1(-lambda * t); }),
                          ks_limit));

    const double atom = sampler.atom();
    const double zeros = static_cast<double>(std::count(samples.busy.begin(), samples.busy.end(), 0.0));
    const double gap = std::abs(zeros / n - atom);
    const double band = 3.0 * std::sqrt(atom * (1.0 - atom) / n);
    out.push_back({"zero_busy_fraction", gap <= band ? CheckStatus::Pass : CheckStatus::Fail,
                   fmt("gap=%.6g band=%.6g", gap, band)});

    const double r = sample_correlation(samples.busy, samples.idle);
    out.push_back(bounded("busy_idle_correlation", std::abs(r), 3.0 / std::sqrt(n)));

    if (samples.n() >= 2) {
      const CycleSummary s = cycle_summary(samples);
      const double busy_target = degenerate ? 0.0 : mean_busy_target;
      const double cycle_target = degenerate ? 1.0 / lambda : mean_cycle_target;
      const auto within_3se = [](double mean, double se, double target) {
        return std::abs(mean - target) <= 3.0 * se + 1e-12;
      };
      const bool ok = within_3se(s.mean_busy, s.stderr_busy, busy_target) &&
                      within_3se(s.mean_idle, s.stderr_idle, 1.0 / lambda) &&
                      within_3se(s.mean_cycle, s.stderr_cycle, cycle_target);
      out.push_back({"simulated_means", ok ? CheckStatus::Pass : CheckStatus::Fail,
                     fmt("mean_busy=%.6g mean_cycle=%.6g", s.mean_busy, s.mean_cycle)});
    }
  }
  return out;
}

}  // namespace mginf
