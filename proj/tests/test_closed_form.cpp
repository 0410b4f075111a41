#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mginf/closed_form.hpp"
#include "mginf/error.hpp"
#include "mginf/quadrature.hpp"
#include "oracles.hpp"

#include <cmath>
#include <vector>

using namespace mginf;
using doctest::Approx;

namespace {

struct Point {
  double lambda, rho;
};

const std::vector<Point> kGrid{{1.0, 1.0}, {1.0, oracle::kLn2}, {2.0, 0.5}, {0.5, 2.0}};

std::vector<double> betas_for(const QueueParams& p) {
  const BetaBounds b = beta_bounds(p);
  return {b.lo, 0.5 * b.lo, 0.0, 0.25 * b.hi, 0.5 * b.hi, b.hi};
}

// p00 straight from its defining integral, independent of the closed form
double p00_by_quadrature(const QueueParams& p, double beta, double t) {
  const double lambda = p.lambda();
  return std::exp(-lambda * quad::integrate([&](double u) { return 1.0 - service_cdf(p, beta, u); }, 0.0, t));
}

}  // namespace

TEST_CASE("frozen oracle values") {
  const QueueParams p = validate_queue_params(1.0, 1.0);
  CHECK(service_cdf(p, 0.0, 1.0) == Approx(oracle::service_cdf_1_1_0_t1).epsilon(1e-14));
  CHECK(service_quantile(p, 0.0, 0.5) == Approx(oracle::service_median_1_1_0).epsilon(1e-13));
  CHECK(busy_period_cdf(p, 0.0, 1.0) == Approx(oracle::busy_period_1_1_0_t1).epsilon(1e-14));
  CHECK(busy_cycle_cdf(p, 0.0, 1.0) == Approx(oracle::busy_cycle_1_1_0_t1).epsilon(1e-14));
  CHECK(empty_probability(p, 0.0, 1.0) == Approx(oracle::p00_1_1_0_t1).epsilon(1e-14));
  CHECK(empty_probability(p, 0.0, 60.0) == Approx(oracle::p00_1_1_0_inf).epsilon(1e-14));
  CHECK(busy_start_empty_probability(p, 0.0, 1.0) == Approx(oracle::p10_1_1_0_t1).epsilon(1e-14));

  const QueueParams q = validate_queue_params(1.0, oracle::kLn2);
  CHECK(service_cdf(q, 1.0, 1.0) == Approx(oracle::service_cdf_1_ln2_1_t1).epsilon(1e-13));
  CHECK(busy_cycle_cdf(q, 1.0, 1.0) == Approx(oracle::confluent_cycle_t1).epsilon(1e-9));

  CHECK(empty_probability(validate_queue_params(2.0, 0.5), 0.3, 0.7) ==
        Approx(oracle::p00_2_half_03_t07).epsilon(1e-14));

  const EnvelopeBounds e = envelope_bounds(p, 1.0);
  CHECK(e.bp_floor == Approx(oracle::bp_floor_1_1_t1).epsilon(1e-14));
  CHECK(e.cycle_ceiling == Approx(oracle::cycle_ceiling_1_1_t1).epsilon(1e-14));
  CHECK(e.cycle_floor == Approx(oracle::cycle_floor_1_1_t1).epsilon(1e-13));
}

TEST_CASE("p00 agrees with quadrature of the service survival") {
  for (const Point& pt : kGrid) {
    const QueueParams p = validate_queue_params(pt.lambda, pt.rho);
    for (double beta : betas_for(p)) {
      for (double t : {0.1, 1.0, 4.0}) {
        CHECK(empty_probability(p, beta, t) == Approx(p00_by_quadrature(p, beta, t)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("all curves are CDFs: start at the atom, nondecreasing, tend to 1") {
  for (const Point& pt : kGrid) {
    const QueueParams p = validate_queue_params(pt.lambda, pt.rho);
    for (double beta : betas_for(p)) {
      CAPTURE(beta);
      double g_prev = 0.0, b_prev = 0.0, z_prev = 0.0;
      for (int k = 0; k <= 400; ++k) {
        const double t = 0.05 * k / pt.lambda;
        const double g = service_cdf(p, beta, t), b = busy_period_cdf(p, beta, t), z = busy_cycle_cdf(p, beta, t);
        CHECK(g >= g_prev - 1e-15);
        CHECK(b >= b_prev - 1e-15);
        CHECK(z >= z_prev - 1e-15);
        CHECK(g <= 1.0);
        CHECK(b <= 1.0);
        CHECK(z <= 1.0);
        g_prev = g, b_prev = b, z_prev = z;
      }
      CHECK(busy_period_cdf(p, beta, 0.0) == Approx(service_atom(p, beta)).epsilon(1e-15));
      CHECK(busy_cycle_cdf(p, beta, 0.0) == 0.0);
      CHECK(service_cdf(p, beta, 500.0 / pt.lambda) == Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("atom at zero across the admissible range") {
  const QueueParams p = validate_queue_params(1.0, 1.0);
  CHECK(service_atom(p, -1.0) == 1.0);
  CHECK(service_atom(p, beta_bounds(p).hi) == Approx(0.0).epsilon(1e-15));
  CHECK(service_atom(p, 0.0) == Approx(1.0 - (1.0 - std::exp(-1.0))).epsilon(1e-15));
}

TEST_CASE("endpoint identities") {
  for (const Point& pt : kGrid) {
    const QueueParams p = validate_queue_params(pt.lambda, pt.rho);
    const BetaBounds b = beta_bounds(p);
    for (double t : {0.0, 0.3, 1.0, 7.0}) {
      CHECK(busy_period_cdf(p, b.lo, t) == 1.0);
      CHECK(busy_cycle_cdf(p, b.lo, t) == Approx(-std::expm1(-pt.lambda * t)).epsilon(1e-12));
      CHECK(busy_period_cdf(p, b.hi, t) == Approx(-std::expm1(-b.hi * t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("confluent busy cycle is continuous across rho = ln 2") {
  for (double t : {0.5, 1.0, 3.0, 10.0}) {
    const double exact = 1.0 - (1.0 + t) * std::exp(-t);
    const QueueParams at = validate_queue_params(1.0, oracle::kLn2);
    const QueueParams below = validate_queue_params(1.0, oracle::kLn2 - 1e-6);
    const QueueParams above = validate_queue_params(1.0, oracle::kLn2 + 1e-6);
    CHECK(busy_cycle_cdf(at, 1.0, t) == Approx(exact).epsilon(1e-10));
    CHECK(std::abs(busy_cycle_cdf(below, 1.0, t) - exact) < 1e-5);
    CHECK(std::abs(busy_cycle_cdf(above, beta_bounds(above).hi, t) - exact) < 1e-5);
  }
}

TEST_CASE("means do not depend on beta") {
  for (const Point& pt : kGrid) {
    const QueueParams p = validate_queue_params(pt.lambda, pt.rho);
    for (double beta : betas_for(p)) {
      CAPTURE(beta);
      if (beta == beta_bounds(p).lo) {
        // degenerate: empty busy periods, the cycle is one idle period
        CHECK(busy_period_curve(p, beta).mean() == 0.0);
        CHECK(busy_cycle_curve(p, beta).mean() == Approx(1.0 / pt.lambda).epsilon(1e-7));
        continue;
      }
      CHECK(service_curve(p, beta).mean() == Approx(p.alpha()).epsilon(1e-7));
      CHECK(busy_period_curve(p, beta).mean() == Approx(std::expm1(pt.rho) / pt.lambda).epsilon(1e-7));
      CHECK(busy_cycle_curve(p, beta).mean() == Approx(std::exp(pt.rho) / pt.lambda).epsilon(1e-7));
    }
  }
}

TEST_CASE("quantile inverts the service CDF and is zero inside the atom") {
  const QueueParams p = validate_queue_params(2.0, 0.5);
  for (double beta : betas_for(p)) {
    const double atom = service_atom(p, beta);
    for (double u : {0.0, 0.1, 0.5, 0.9, 0.999}) {
      const double x = service_quantile(p, beta, u);
      if (u <= atom) {
        CHECK(x == 0.0);
      } else {
        CHECK(service_cdf(p, beta, x) == Approx(u).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(service_quantile(p, 0.0, 1.0), Error);
}

TEST_CASE("monotony indicator recovers beta") {
  for (const Point& pt : kGrid) {
    const QueueParams p = validate_queue_params(pt.lambda, pt.rho);
    for (double beta : betas_for(p)) {
      if (beta == beta_bounds(p).lo) {
        CHECK_THROWS_AS(monotony_indicator(p, beta, 1.0), Error);
        continue;
      }
      for (double t : {0.0, 0.5, 2.0, 10.0}) CHECK(monotony_indicator(p, beta, t) == Approx(beta).epsilon(1e-10));
    }
  }
}

TEST_CASE("busy-period CDF dominates the service CDF") {
  // A busy period lasts at least as long as its opening service.
  for (const Point& pt : kGrid) {
    const QueueParams p = validate_queue_params(pt.lambda, pt.rho);
    for (double beta : betas_for(p)) {
      for (int k = 0; k <= 200; ++k) {
        const double t = 0.05 * k;
        CHECK(busy_period_cdf(p, beta, t) <= service_cdf(p, beta, t) + 1e-14);
      }
    }
  }
}

TEST_CASE("cycle ceiling holds for every admissible beta") {
  for (const Point& pt : kGrid) {
    const QueueParams p = validate_queue_params(pt.lambda, pt.rho);
    for (double beta : betas_for(p)) {
      for (int k = 0; k <= 500; ++k) {
        const double t = 0.02 * k;
        CHECK(busy_cycle_cdf(p, beta, t) <= envelope_bounds(p, t).cycle_ceiling + 1e-14);
      }
    }
  }
}

TEST_CASE("the floors are attained at the upper endpoint") {
  const QueueParams p = validate_queue_params(1.0, 1.0);
  const double hi = beta_bounds(p).hi;
  for (double t : {0.5, 1.0, 5.0}) {
    const EnvelopeBounds e = envelope_bounds(p, t);
    CHECK(busy_period_cdf(p, hi, t) == Approx(e.bp_floor).epsilon(1e-13));
    CHECK(busy_cycle_cdf(p, hi, t) == Approx(e.cycle_floor).epsilon(1e-12));
  }
}

TEST_CASE("input errors") {
  const QueueParams p = validate_queue_params(1.0, 1.0);
  CHECK_THROWS_AS(service_cdf(p, 0.9, 1.0), Error);
  CHECK_THROWS_AS(service_cdf(p, 0.0, -1.0), Error);
  CHECK_THROWS_AS(busy_period_cdf(p, -2.0, 1.0), Error);
}
