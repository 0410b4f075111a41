#include "mginf/cli.hpp"

#include "mginf/closed_form.hpp"
#include "mginf/error.hpp"
#include "mginf/riccati_general.hpp"
#include "mginf/simulator.hpp"
#include "mginf/transform_series.hpp"
#include "mginf/verification.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <vector>

namespace mginf::cli {

namespace {

struct Model {
  QueueParams params;
  std::optional<double> beta;
  KernelContext ctx;
};

Model resolve_model(const RunConfig& config) {
  const QueueParams params = validate_queue_params(config.lambda, config.rho);
  if (!(config.t_max > 0.0) || !std::isfinite(config.t_max)) {
    throw Error(ErrorCode::NonPositiveTime, "--t-max must be > 0");
  }
  if (config.step && !(*config.step > 0.0)) {
    throw Error(ErrorCode::NonPositiveTime, "--step must be > 0");
  }
  if (config.beta.has_value() == config.beta_file.has_value()) {
    throw Error(ErrorCode::InvalidTable, "exactly one of --beta and --beta-file is required");
  }
  if (config.beta) {
    const ValidatedBeta vbeta = validate_beta(params, BetaSpec::constant(*config.beta), config.t_max);
    return {params, config.beta, make_kernel(vbeta)};
  }
  BetaSpec spec = read_beta_csv(*config.beta_file);
  const double horizon = std::max(config.t_max, spec.last_knot_time());
  const ValidatedBeta vbeta = validate_beta(params, std::move(spec), horizon);
  return {params, std::nullopt, make_kernel(vbeta)};
}

GridSpec series_grid(const Model& m, const RunConfig& config, double at_least) {
  GridSpec grid = GridSpec::default_for(m.params);
  if (config.step) grid.step = *config.step;
  grid.t_max = std::max(grid.t_max, at_least);
  return grid;
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Runs body with the configured output stream; maps library errors to exit codes.
template <typename Body>
int guarded(const RunConfig& config, std::ostream& out, std::ostream& err, Body body) {
  try {
    if (config.out) {
      std::ofstream file(*config.out, std::ios::binary);
      if (!file) {
        err << "error: cannot open output file " << *config.out << "\n";
        return kExitIo;
      }
      const int code = body(file, out);
      file.flush();
      if (!file) {
        err << "error: failed writing " << *config.out << "\n";
        return kExitIo;
      }
      return code;
    }
    return body(out, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::IoFailure ? kExitIo : kExitInvalidInput;
  }
}

}  // namespace

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(config, out, err, [&](std::ostream& csv, std::ostream&) {
    const Model m = resolve_model(config);
    const double step = config.step.value_or(0.1);
    const GridSpec rows{step, config.t_max};
    const QueueParams& p = m.params;

    std::optional<GridFunction> busy;
    std::optional<GridFunction> cycle;
    if (!m.beta) {
      busy = busy_period_cdf_series(m.ctx, series_grid(m, RunConfig{}, config.t_max), config.tol);
      cycle = busy_cycle_from_busy_period(p, *busy);
    }

    csv << "t,G,B,Z,p00,p10,indicator,bp_floor,cycle_floor,cycle_ceiling\n";
    for (std::size_t k = 0; k < rows.points(); ++k) {
      const double t = step * static_cast<double>(k);
      double g, b, z, p00, indicator;
      if (m.beta) {
        const double beta = *m.beta;
        g = service_cdf(p, beta, t);
        b = busy_period_cdf(p, beta, t);
        z = busy_cycle_cdf(p, beta, t);
        p00 = empty_probability(p, beta, t);
        indicator = m.ctx.is_degenerate() ? std::numeric_limits<double>::quiet_NaN() : monotony_indicator(p, beta, t);
      } else {
        g = riccati_service_cdf(m.ctx, t);
        b = busy->at(t);
        z = cycle->at(t);
        p00 = riccati_empty_probability(m.ctx, t);
        indicator = m.ctx.is_degenerate() ? std::numeric_limits<double>::quiet_NaN()
                                          : riccati_monotony_indicator(m.ctx, t);
      }
      const EnvelopeBounds env = envelope_bounds(p, t);
      csv << num(t) << ',' << num(g) << ',' << num(b) << ',' << num(z) << ',' << num(p00) << ',' << num(p00 * g)
          << ',' << num(indicator) << ',' << num(env.bp_floor) << ',' << num(env.cycle_floor) << ','
          << num(env.cycle_ceiling) << '\n';
    }
    return kExitOk;
  });
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(config, out, err, [&](std::ostream& csv, std::ostream& summary) {
    const Model m = resolve_model(config);
    if (config.cycles < 1) {
      throw Error(ErrorCode::EmptySample, "--cycles must be >= 1");
    }
    const QueueParams& p = m.params;
    const ServiceSampler sampler =
        m.beta ? ServiceSampler::constant(p, *m.beta) : ServiceSampler::riccati(m.ctx);
    const CycleSamples samples = run_cycles(p, sampler, config.cycles, config.seed);

    csv << "busy,idle,cycle\n";
    for (std::size_t i = 0; i < samples.n(); ++i) {
      csv << num(samples.busy[i]) << ',' << num(samples.idle[i]) << ',' << num(samples.cycle[i]) << '\n';
    }

    std::function<double(double)> busy_cdf;
    std::function<double(double)> cycle_cdf;
    if (m.beta) {
      const double beta = *m.beta;
      busy_cdf = [p, beta](double t) { return busy_period_cdf(p, beta, t); };
      cycle_cdf = [p, beta](double t) { return busy_cycle_cdf(p, beta, t); };
    } else {
      const auto busy = std::make_shared<GridFunction>(
          busy_period_cdf_series(m.ctx, series_grid(m, config, 0.0), config.tol));
      const auto cycle = std::make_shared<GridFunction>(busy_cycle_from_busy_period(p, *busy));
      busy_cdf = [busy](double t) { return busy->at(t); };
      cycle_cdf = [cycle](double t) { return cycle->at(t); };
    }
    const double lambda = p.lambda();
    summary << "# cycles," << samples.n() << "\n# seed," << samples.seed << '\n';
    if (samples.n() >= 2) {
      const CycleSummary s = cycle_summary(samples);
      summary << "# mean_busy," << num(s.mean_busy) << "\n# stderr_busy," << num(s.stderr_busy) << '\n'
              << "# mean_idle," << num(s.mean_idle) << "\n# stderr_idle," << num(s.stderr_idle) << '\n'
              << "# mean_cycle," << num(s.mean_cycle) << "\n# stderr_cycle," << num(s.stderr_cycle) << '\n';
    }
    summary << "# target_mean_busy," << num(m.ctx.is_degenerate() ? 0.0 : std::expm1(p.rho()) / lambda) << '\n'
            << "# target_mean_cycle,"
            << num(m.ctx.is_degenerate() ? 1.0 / lambda : 1.0 / (p.exp_neg_rho() * lambda)) << '\n'
            << "# ks_busy_period," << num(ks_distance(empirical_cdf(samples.busy), busy_cdf)) << '\n'
            << "# ks_busy_cycle," << num(ks_distance(empirical_cdf(samples.cycle), cycle_cdf)) << '\n'
            << "# ks_idle,"
            << num(ks_distance(empirical_cdf(samples.idle), [lambda](double t) { return -std::expm1(-lambda * t); }))
            << '\n';
    const auto zeros = std::count(samples.busy.begin(), samples.busy.end(), 0.0);
    summary << "# zero_busy_fraction," << num(static_cast<double>(zeros) / static_cast<double>(samples.n())) << '\n'
            << "# service_atom," << num(sampler.atom()) << '\n'
            << "# busy_idle_correlation," << num(sample_correlation(samples.busy, samples.idle)) << '\n';
    return kExitOk;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(config, out, err, [&](std::ostream& report, std::ostream&) {
    const Model m = resolve_model(config);
    if (config.cycles < 1) {
      throw Error(ErrorCode::EmptySample, "--cycles must be >= 1");
    }
    const VerifyInputs in{m.ctx, m.beta, series_grid(m, config, 0.0), config.tol, config.cycles, config.seed};
    bool all_pass = true;
    for (const CheckResult& r : verify_point(in)) {
      report << to_string(r.status) << ' ' << r.name << ' ' << r.detail << '\n';
      all_pass = all_pass && r.status != CheckStatus::Fail;
    }
    report << (all_pass ? "ALL PASS" : "SOME CHECKS FAILED") << '\n';
    return all_pass ? kExitOk : kExitVerifyFailed;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"M|G|inf Riccati service family: busy-period and busy-cycle laws"};
  app.require_subcommand(1);
  RunConfig config;
  double beta = 0.0;
  std::string beta_file;
  double step = 0.0;
  std::string out_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lambda", config.lambda, "arrival rate")->required();
    sub->add_option("--rho", config.rho, "traffic intensity")->required();
    auto* b = sub->add_option("--beta", beta, "constant beta");
    auto* f = sub->add_option("--beta-file", beta_file, "CSV table t,beta");
    b->excludes(f);
    sub->add_option("--t-max", config.t_max, "time horizon");
    sub->add_option("--step", step, "grid step");
    sub->add_option("--cycles", config.cycles, "simulated cycles");
    sub->add_option("--seed", config.seed, "random seed");
    sub->add_option("--tol", config.tol, "series truncation tolerance");
    sub->add_option("--out", out_path, "output file (default stdout)");
  };
  CLI::App* eval = app.add_subcommand("eval", "evaluate curves on a time grid");
  CLI::App* simulate = app.add_subcommand("simulate", "simulate regenerative cycles");
  CLI::App* verify = app.add_subcommand("verify", "cross-validate every route for one parameter point");
  for (CLI::App* sub : {eval, simulate, verify}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen->count("--beta") > 0) config.beta = beta;
  if (chosen->count("--beta-file") > 0) config.beta_file = beta_file;
  if (chosen->count("--step") > 0) config.step = step;
  if (chosen->count("--out") > 0) config.out = out_path;

  if (chosen == eval) return cmd_eval(config, out, err);
  if (chosen == simulate) return cmd_simulate(config, out, err);
  return cmd_verify(config, out, err);
}

}  // namespace mginf::cli
