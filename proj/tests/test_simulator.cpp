#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mginf/closed_form.hpp"
#include "mginf/error.hpp"
#include "mginf/rng.hpp"
#include "mginf/simulator.hpp"

#include <algorithm>
#include <cmath>

using namespace mginf;
using doctest::Approx;

TEST_CASE("splitmix substreams are reproducible and distinct") {
  SplitMix64 a = SplitMix64::substream(1, 0), b = SplitMix64::substream(1, 0), c = SplitMix64::substream(1, 1);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  SplitMix64 u(9);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("service sampling follows the mixed law") {
  const QueueParams p = validate_queue_params(1.0, 1.0);
  const double atom = service_atom(p, 0.0);
  CHECK(sample_service(p, 0.0, 0.5 * atom) == 0.0);
  CHECK(service_cdf(p, 0.0, sample_service(p, 0.0, 0.9)) == Approx(0.9).epsilon(1e-12));
  CHECK(ServiceSampler::constant(p, 0.0).atom() == Approx(atom));
}

TEST_CASE("run_cycles: determinism and serial/parallel equality") {
  const QueueParams p = validate_queue_params(1.0, 1.0);
  const CycleSamples a = run_cycles(p, 0.2, 5000, 11, Execution::Serial);
  const CycleSamples b = run_cycles(p, 0.2, 5000, 11, Execution::Parallel);
  const CycleSamples c = run_cycles(p, 0.2, 5000, 12);
  CHECK(a.busy == b.busy);
  CHECK(a.idle == b.idle);
  CHECK(a.cycle == b.cycle);
  CHECK(a.busy != c.busy);
  for (std::size_t i = 0; i < a.n(); ++i) CHECK(a.cycle[i] == a.busy[i] + a.idle[i]);
  CHECK_THROWS_AS(run_cycles(p, 0.2, 0, 1), Error);
}

TEST_CASE("simulated laws match the analytic curves") {
  const QueueParams p = validate_queue_params(1.0, 1.0);
  const std::size_t n = 100000;
  for (double beta : {0.0, 0.4}) {
    CAPTURE(beta);
    const CycleSamples s = run_cycles(p, beta, n, 1);
    const double limit = 2.5 / std::sqrt(static_cast<double>(n));
    CHECK(ks_distance(empirical_cdf(s.busy), [&](double t) { return busy_period_cdf(p, beta, t); }) < limit);
    CHECK(ks_distance(empirical_cdf(s.cycle), [&](double t) { return busy_cycle_cdf(p, beta, t); }) < limit);
    CHECK(ks_distance(empirical_cdf(s.idle), [](double t) { return -std::expm1(-t); }) < limit);

    const CycleSummary sum = cycle_summary(s);
    CHECK(std::abs(sum.mean_busy - std::expm1(1.0)) < 3.0 * sum.stderr_busy);
    CHECK(std::abs(sum.mean_cycle - std::exp(1.0)) < 3.0 * sum.stderr_cycle);

    const double atom = service_atom(p, beta);
    const double zeros = static_cast<double>(std::count(s.busy.begin(), s.busy.end(), 0.0)) / n;
    CHECK(std::abs(zeros - atom) < 3.0 * std::sqrt(atom * (1.0 - atom) / n));
    CHECK(std::abs(sample_correlation(s.busy, s.idle)) < 3.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("degenerate service gives zero-length busy periods") {
  const QueueParams p = validate_queue_params(1.0, 1.0);
  const CycleSamples s = run_cycles(p, -1.0, 2000, 5);
  CHECK(std::all_of(s.busy.begin(), s.busy.end(), [](double b) { return b == 0.0; }));
  CHECK(sample_correlation(s.busy, s.idle) == 0.0);
}

TEST_CASE("general sampler agrees with the constant sampler in law") {
  const QueueParams p = validate_queue_params(2.0, 0.5);
  const KernelContext ctx = make_kernel(validate_beta(p, BetaSpec::constant(0.5), 10.0));
  const CycleSamples s = run_cycles(p, ServiceSampler::riccati(ctx), 50000, 3);
  CHECK(ks_distance(empirical_cdf(s.busy), [&](double t) { return busy_period_cdf(p, 0.5, t); }) < 0.012);
}

TEST_CASE("KS distance handles atoms and ties") {
  // all mass at 0 against a CDF with the same atom
  CHECK(ks_distance(empirical_cdf({0.0, 0.0, 0.0, 0.0}), [](double) { return 1.0; }) == 0.0);
  // half at 0, half at 1, against the matching step CDF
  const auto step = [](double t) { return t < 1.0 ? 0.5 : 1.0; };
  CHECK(ks_distance(empirical_cdf({0.0, 0.0, 1.0, 1.0}), step) == Approx(0.0));
  // a single point at 1 against U(0, 2): sup is 0.5 at the jump
  CHECK(ks_distance(empirical_cdf({1.0}), [](double t) { return std::clamp(t / 2.0, 0.0, 1.0); }) == Approx(0.5));
  CHECK_THROWS_AS(empirical_cdf({}), Error);
}

TEST_CASE("empirical CDF values and left limits") {
  const EmpiricalCdf f = empirical_cdf({3.0, 1.0, 2.0, 2.0});
  CHECK(f(0.5) == 0.0);
  CHECK(f(2.0) == 0.75);
  CHECK(f.left_limit(2.0) == 0.25);
  CHECK(f(10.0) == 1.0);
}
