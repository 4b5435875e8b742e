#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "szmk/funcs.hpp"
#include "szmk/kernel.hpp"

using namespace szmk;

TEST_CASE("operator config rejects out-of-range parameters") {
  CHECK_THROWS_AS(OperatorConfig(0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(OperatorConfig(10, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(OperatorConfig(10, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(OperatorConfig(10, 2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(OperatorConfig(10, 2.0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(OperatorConfig(10, 2.0, 1e-12, 0), std::invalid_argument);
  const OperatorConfig cfg(10, 2.0);
  CHECK(cfg.tail_tol == kDefaultTailTol);
  CHECK(cfg.quad_order == kDefaultQuadOrder);
}

TEST_CASE("lambda_param") {
  CHECK(lambda_param(0.0, OperatorConfig(7, 3.0)) == 0.0);
  // Frozen from a 40-digit evaluation of x log a / (a^{1/m} - 1).
  CHECK(lambda_param(1.0, OperatorConfig(1, std::numbers::e)) ==
        doctest::Approx(0.581976706869326).epsilon(1e-14));
  CHECK(lambda_param(1.0, OperatorConfig(10, 2.0)) ==
        doctest::Approx(9.65742986426838).epsilon(1e-14));
  CHECK_THROWS_AS(lambda_param(-1e-9, OperatorConfig(10, 2.0)), std::invalid_argument);

  SUBCASE("no cancellation for large m") {
    // a^{1/m} - 1 = u + u^2/2 + u^3/6 + ..., u = log(a)/m
    const double u = std::log(2.0) / 1e6;
    const double series = u + u * u / 2 + u * u * u / 6;
    CHECK(base_increment(1000000, 2.0) == doctest::Approx(series).epsilon(1e-15));
    CHECK(lambda_param(1.0, OperatorConfig(1000000, 2.0)) ==
          doctest::Approx(std::log(2.0) / series).epsilon(1e-14));
  }
}

TEST_CASE("poisson weights") {
  SUBCASE("degenerate lambda") {
    const WeightRange w = poisson_weights(0.0, 1e-12);
    CHECK(w.k_lo == 0);
    CHECK(w.k_hi == 0);
    REQUIRE(w.weights.size() == 1);
    CHECK(w.weights[0] == 1.0);
  }
  SUBCASE("lambda = 1 matches the factorial series termwise") {
    const WeightRange w = poisson_weights(1.0, 1e-12);
    CHECK(w.k_lo == 0);
    for (long k = w.k_lo; k <= w.k_hi; ++k) {
      const double expected = static_cast<double>(oracle::poisson_factorial(static_cast<int>(k), 1.0L));
      CHECK(std::abs(w.weight(k) - expected) <= 1e-15);
    }
  }
  SUBCASE("pmf agrees with log-space factorial form") {
    for (double lambda : {0.3, 4.5, 30.0, 250.0}) {
      for (long k = 0; k < static_cast<long>(3 * lambda + 20); ++k) {
        const long double log_p = -lambda + k * std::log(static_cast<long double>(lambda)) -
                                  std::lgamma(k + 1.0L);
        const double expected = static_cast<double>(std::exp(log_p));
        CHECK(poisson_pmf(k, lambda) == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
  SUBCASE("normalization and omitted-mass bound, random lambda") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> log_lambda(-6.0, std::log(2e6));
    for (int trial = 0; trial < 200; ++trial) {
      const double lambda = std::exp(log_lambda(rng));
      for (double tol : {1e-6, 1e-9, 1e-12}) {
        const WeightRange w = poisson_weights(lambda, tol);
        CAPTURE(lambda);
        CAPTURE(tol);
        CHECK((w.weights >= 0.0).all());
        CHECK(w.omitted_mass <= tol);
        const double total = w.weights.sum();
        CHECK(total >= 1.0 - tol);
        CHECK(total <= 1.0 + 1e-12);
        CHECK(w.k_lo <= static_cast<long>(std::floor(lambda)));
        CHECK(w.k_hi >= static_cast<long>(std::floor(lambda)));
      }
    }
  }
}

TEST_CASE("segment integrals") {
  const auto e0 = monomial(0);
  const auto e1 = monomial(1);
  const auto e2 = monomial(2);
  for (int m : {1, 3, 10, 1000}) {
    for (long k : {0L, 1L, 17L}) CHECK(segment_integral(e0, k, m, 8) == doctest::Approx(1.0 / m).epsilon(1e-15));
  }
  CHECK(segment_integral(e1, 0, 1, 8) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(segment_integral(e2, 1, 2, 8) == doctest::Approx(7.0 / 24.0).epsilon(1e-15));

  SUBCASE("exact through degree 2n-1") {
    for (int order : {1, 2, 4, 8}) {
      for (int degree = 0; degree <= 2 * order - 1; ++degree) {
        for (long k : {0L, 5L}) {
          const int m = 3;
          const double expected = static_cast<double>(
              oracle::monomial_integral(degree, static_cast<long double>(k) / m,
                                        static_cast<long double>(k + 1) / m));
          const double got =
              segment_integral([degree](double t) { return std::pow(t, degree); }, k, m, order);
          CAPTURE(order);
          CAPTURE(degree);
          CHECK(got == doctest::Approx(expected).epsilon(1e-13));
        }
      }
    }
  }
  SUBCASE("non-finite integrand is signalled") {
    CHECK_THROWS_AS(segment_integral([](double t) { return std::sqrt(t - 0.5); }, 0, 1, 2),
                    std::domain_error);
    CHECK_THROWS_AS(segment_integral([](double t) { return std::exp(1000.0 * t); }, 0, 1, 8),
                    std::domain_error);
    CHECK_NOTHROW(segment_integral([](double t) { return std::sqrt(t - 0.5); }, 1, 1, 2));
  }
  CHECK_THROWS_AS(segment_integral(e0, -1, 2, 8), std::invalid_argument);
}

TEST_CASE("apply_operator on monomials") {
  const auto e0 = monomial(0);
  const auto e1 = monomial(1);

  for (int m : {1, 10, 100}) {
    for (double a : {1.5, 2.0, 10.0}) {
      const OperatorConfig cfg(m, a);
      for (double x : {0.0, 0.3, 1.0, 4.0}) {
        CHECK(std::abs(apply_operator(e0, cfg, x).value - 1.0) <= 2 * cfg.tail_tol);
      }
      CHECK(apply_operator(e1, cfg, 0.0).value == doctest::Approx(1.0 / (2 * m)).epsilon(1e-14));
    }
  }
  // Frozen from a 40-digit evaluation of 1/(2m) + x log a / ((a^{1/m}-1) m).
  CHECK(apply_operator(e1, OperatorConfig(10, 2.0), 1.0).value ==
        doctest::Approx(1.015742986426837944).epsilon(2e-12));

  CHECK_THROWS_AS(apply_operator(e1, OperatorConfig(10, 2.0), -0.5), std::invalid_argument);

  SUBCASE("bookkeeping") {
    const OperatorConfig cfg(25, 2.0);
    const EvalResult r = apply_operator(e1, cfg, 3.0);
    const WeightRange w = poisson_weights(lambda_param(3.0, cfg), cfg.tail_tol);
    // The range may grow past the mass cutoff while terms still count.
    CHECK(r.terms_used >= w.k_hi - w.k_lo + 1);
    // The largest segment average of e1 is at the last covered segment.
    CHECK(r.tail_bound <= cfg.tail_tol * (w.k_lo + r.terms_used) / cfg.m);
    CHECK(r.tail_bound >= 0.0);
  }

  SUBCASE("agrees with a direct long-double Poisson sum") {
    for (int m : {1, 10, 100}) {
      for (double a : {1.5, 2.0, std::numbers::e, 10.0}) {
        const OperatorConfig cfg(m, a);
        for (double x : {0.0, 0.5, 1.0, 2.0, 5.0}) {
          for (int j = 0; j <= 4; ++j) {
            const double expected = static_cast<double>(oracle::operator_monomial(j, m, a, x));
            const double got = apply_operator([j](double t) { return std::pow(t, j); }, cfg, x).value;
            CAPTURE(m);
            CAPTURE(a);
            CAPTURE(x);
            CAPTURE(j);
            CHECK(std::abs(got - expected) <= 1e-12 * (1.0 + std::abs(expected)));
          }
        }
      }
    }
  }
}

TEST_CASE("operator is positive and linear") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_real_distribution<double> xs(0.0, 5.0);
  std::uniform_int_distribution<int> ms(1, 200);
  std::uniform_real_distribution<double> as(1.05, 12.0);
  for (int trial = 0; trial < 100; ++trial) {
    const OperatorConfig cfg(ms(rng), as(rng));
    const double x = xs(rng);
    const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
    auto f = [&](double t) { return c0 + c1 * t * t; };
    auto g = [&](double t) { return c2 * t + c3 * t * t * t; };
    const double alpha = coef(rng), beta = coef(rng);
    const double combined =
        apply_operator([&](double t) { return alpha * f(t) + beta * g(t); }, cfg, x).value;
    const double separate =
        alpha * apply_operator(f, cfg, x).value + beta * apply_operator(g, cfg, x).value;
    CAPTURE(trial);
    CHECK(std::abs(combined - separate) <= 1e-11 * (1.0 + std::abs(separate)));

    // Nonnegative integrands give nonnegative values.
    CHECK(apply_operator([&](double t) { return std::pow(t - x, 2) * std::abs(f(t)); }, cfg, x)
              .value >= 0.0);
    CHECK(apply_operator([](double t) { return std::abs(std::sin(7.0 * t)); }, cfg, x).value >= 0.0);
  }
}

TEST_CASE("exponential-growth functions are checked against the truncation range") {
  const TestFunction f = registry_get("x2expx");
  CHECK_NOTHROW(apply_operator(f, OperatorConfig(10, 2.0), 5.0));
  CHECK_THROWS_AS(apply_operator(f, OperatorConfig(1, 2.0), 1100.0), std::domain_error);
}

TEST_CASE("kernel cdf") {
  const OperatorConfig cfg(10, 2.0);
  for (double x : {0.0, 0.5, 1.0, 3.0}) {
    CHECK(kernel_cdf(x, 0.0, cfg) == 0.0);
    CHECK(std::abs(kernel_cdf(x, 1e6, cfg) - 1.0) <= cfg.tail_tol);
    CHECK(std::abs(kernel_cdf(x, std::numeric_limits<double>::infinity(), cfg) - 1.0) <=
          cfg.tail_tol);
  }
  SUBCASE("direct summation at the right end of the range") {
    const WeightRange w = poisson_weights(lambda_param(1.0, cfg), cfg.tail_tol);
    const double y = static_cast<double>(w.k_hi + 1) / cfg.m;
    CHECK(kernel_cdf(1.0, y, cfg) == doctest::Approx(w.weights.sum()).epsilon(1e-15));
  }
  SUBCASE("frozen value") {
    // sum_{k<5} Poisson(9.657...) masses, 40-digit evaluation.
    CHECK(kernel_cdf(1.0, 0.5, cfg) == doctest::Approx(0.036441001729597084).epsilon(1e-13));
    // Fractional segment: half of the k = 5 mass on top.
    const double lambda = lambda_param(1.0, cfg);
    const double expected = 0.036441001729597084 + 0.5 * poisson_pmf(5, lambda);
    CHECK(kernel_cdf(1.0, 0.55, cfg) == doctest::Approx(expected).epsilon(1e-13));
  }
  SUBCASE("monotone in y") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ys(0.0, 4.0);
    for (int trial = 0; trial < 500; ++trial) {
      double y1 = ys(rng), y2 = ys(rng);
      if (y1 > y2) std::swap(y1, y2);
      CHECK(kernel_cdf(1.3, y2, cfg) - kernel_cdf(1.3, y1, cfg) >= 0.0);
    }
  }
  CHECK_THROWS_AS(kernel_cdf(-1.0, 1.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(kernel_cdf(1.0, -1.0, cfg), std::invalid_argument);
}
