#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "szmk/funcs.hpp"
#include "szmk/moduli.hpp"

using namespace szmk;

namespace {

const TestFunction kE1 = monomial(1);
const TestFunction kConst = constant_function(2.5);

}  // namespace

TEST_CASE("grid spec validation") {
  CHECK_THROWS_AS(GridSpec(-1.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(1.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(0.0, 1.0, 10, -1), std::invalid_argument);
  const GridSpec g(0.0, 2.0, 5, 0);
  CHECK(g.spacing() == 0.5);
  CHECK(g.nodes()[4] == 2.0);
}

TEST_CASE("weight helpers") {
  CHECK(psi(0.0) == 0.0);
  CHECK(u_of_x(0.0) == 1.0);
  CHECK(psi(1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(u_of_x(3.0) == doctest::Approx(std::sqrt(3.0) + 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(psi(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(u_of_x(-0.1), std::invalid_argument);
}

TEST_CASE("step samples") {
  const auto s = detail::step_samples(0.4);
  CHECK(s.front() == 0.4);
  for (double h : s) {
    CHECK(h > 0.0);
    CHECK(h <= 0.4);
  }
}

TEST_CASE("Lipschitz maximal function") {
  const GridSpec grid;
  CHECK(lipschitz_maximal(kConst, 1.0, 0.5, grid).value == 0.0);
  for (double x : {0.0, 0.7, 3.0, 10.0}) {
    CHECK(lipschitz_maximal(kE1, x, 1.0, grid).value == doctest::Approx(1.0).epsilon(1e-12));
  }
  const TestFunction root = registry_get("sqrt");
  CHECK(lipschitz_maximal(root, 0.0, 0.5, grid).value == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("at least the brute-force grid sup") {
    const TestFunction f = registry_get("xcos2x1");
    for (double x : {0.5, 2.0}) {
      const auto samples = oracle::linspace(0.0, 10.0, 1001);
      const double fx = f(x);
      const double sup = oracle::grid_sup(samples, [&](double t) {
        return t == x ? 0.0 : std::abs(f(t) - fx) / std::pow(std::abs(t - x), 0.75);
      });
      const auto r = lipschitz_maximal(f, x, 0.75, grid);
      CHECK(r.value >= sup * (1 - 1e-12));
      CHECK(r.value <= sup * 1.01);
    }
  }
  SUBCASE("global variant dominates every pointwise value") {
    const GridSpec coarse(0.0, 5.0, 101, 0);
    const TestFunction f = registry_get("cos");
    const double global = lipschitz_maximal_global(f, 0.5, coarse).value;
    for (double x : {0.0, 1.0, 2.5, 5.0}) CHECK(lipschitz_maximal(f, x, 0.5, coarse).value <= global + 1e-12);
  }
  CHECK_THROWS_AS(lipschitz_maximal(kE1, 1.0, 0.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(lipschitz_maximal(kE1, 1.0, 1.5, grid), std::invalid_argument);
  CHECK_THROWS_AS(lipschitz_maximal(kE1, 11.0, 1.0, grid), std::invalid_argument);
}

TEST_CASE("Ditzian-Totik modulus") {
  const GridSpec grid;
  CHECK(dt_modulus(kConst, 0.3, grid).value == 0.0);

  SUBCASE("e1 gives eps * psi at the largest feasible x") {
    for (double eps : {0.05, 0.3, 1.0}) {
      const auto nodes = oracle::linspace(grid.lo, grid.hi, grid.points);
      double x_star = 0.0;
      for (double x : nodes) {
        if (x > 0.0 && x + 0.5 * eps * psi(x) <= grid.hi) x_star = x;
      }
      const double at_grid = eps * psi(x_star);
      // Refinement may move x by less than one spacing; the continuum
      // optimum solves x + eps psi(x) / 2 = hi.
      double lo = x_star, hi = grid.hi;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mid + 0.5 * eps * psi(mid) <= grid.hi ? lo : hi) = mid;
      }
      const auto r = dt_modulus(kE1, eps, grid);
      CAPTURE(eps);
      CHECK(r.value >= at_grid * (1 - 1e-12));
      CHECK(r.value <= eps * psi(lo) * (1 + 1e-12));
    }
  }
  SUBCASE("nondecreasing in eps") {
    const TestFunction f = registry_get("xcos2x1");
    double prev = 0.0;
    for (double eps : {0.01, 0.02, 0.04, 0.08, 0.16, 0.32, 0.64}) {
      const double v = dt_modulus(f, eps, GridSpec(0.0, 5.0, 501)).value;
      CHECK(v >= prev);
      prev = v;
    }
    for (double eps : {0.013, 0.2, 0.9}) {
      CHECK(dt_modulus(f, eps / 2, grid).value <= dt_modulus(f, eps, grid).value);
    }
  }
  CHECK_THROWS_AS(dt_modulus(kE1, 0.0, grid), std::invalid_argument);
  // Every x in (0, 0.01] has x + h psi(x)/2 beyond hi once h is large, but
  // small steps remain feasible; a grid of only x = 0 and hi leaves nothing.
  CHECK_THROWS_AS(dt_modulus(kE1, 0.5, GridSpec(0.0, 1e-3, 2)), std::invalid_argument);
}

TEST_CASE("two-parameter Lipschitz constant") {
  const GridSpec grid(0.0, 5.0, 201, 0);
  CHECK(lip_uv_constant(kConst, 1.0, 1.0, 1.0, grid) == 0.0);

  SUBCASE("e1 matches a brute-force sup") {
    const auto nodes = oracle::linspace(0.0, 5.0, 201);
    double sup = 0.0;
    for (double x : nodes) {
      if (x <= 0.0) continue;
      for (double y : nodes) {
        if (y == x) continue;
        sup = std::max(sup, std::sqrt(y + x * x + x));
      }
    }
    const double got = lip_uv_constant(kE1, 1.0, 1.0, 1.0, grid);
    CHECK(std::isfinite(got));
    CHECK(got == doctest::Approx(sup).epsilon(1e-12));
  }
  SUBCASE("homogeneous of degree one") {
    const TestFunction f = registry_get("cos");
    const TestFunction twice{"2cos", [](double t) { return 2.0 * std::cos(t); }, {}, {}, {}, {}, {}};
    CHECK(lip_uv_constant(twice, 0.5, 2.0, 0.5, grid) ==
          doctest::Approx(2.0 * lip_uv_constant(f, 0.5, 2.0, 0.5, grid)).epsilon(1e-14));
  }
  SUBCASE("pointwise constants are bounded by the global one") {
    const TestFunction f = registry_get("sqrt");
    const double global = lip_uv_constant(f, 1.0, 1.0, 0.5, grid);
    for (double x : {0.025, 1.0, 4.0}) {
      CHECK(lip_uv_constant_at(f, x, 1.0, 1.0, 0.5, grid) <= global * (1 + 1e-14));
    }
    CHECK_THROWS_AS(lip_uv_constant_at(f, 0.0, 1.0, 1.0, 0.5, grid), std::invalid_argument);
  }
  CHECK_THROWS_AS(lip_uv_constant(kE1, 0.0, 1.0, 1.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(lip_uv_constant(kE1, 1.0, -1.0, 1.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(lip_uv_constant(kE1, 1.0, 1.0, 1.5, grid), std::invalid_argument);
}

TEST_CASE("weighted modulus") {
  const GridSpec grid;
  CHECK(weighted_modulus(kConst, 0.5, grid).value == 0.0);
  for (double xi : {0.1, 0.5, 1.0}) {
    const auto r = weighted_modulus(kE1, xi, grid);
    CHECK(r.value == doctest::Approx(xi / (1 + xi * xi)).epsilon(1e-14));
    CHECK(r.argmax_x == 0.0);
    CHECK(r.argmax_step == xi);
  }

  const TestFunction f = registry_get("xcos2x1");
  SUBCASE("nondecreasing and vanishing at zero step") {
    double prev = 0.0;
    for (double xi = 1.0 / 1024; xi <= 2.0; xi *= 2) {
      const double v = weighted_modulus(f, xi, grid).value;
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(weighted_modulus(f, 1e-8, grid).value < 1e-7);
  }
  SUBCASE("scaling inequality") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> xis(0.01, 0.99);
    std::uniform_real_distribution<double> lambdas(0.1, 8.0);
    for (const char* name : {"xcos2x1", "cos", "sqrt", "e2"}) {
      const TestFunction g = registry_get(name);
      for (int trial = 0; trial < 10; ++trial) {
        const double xi = xis(rng), lambda = lambdas(rng);
        const double lhs = weighted_modulus(g, lambda * xi, grid).value;
        const double rhs = 2.0 * (1 + xi * xi) * (1 + lambda) * weighted_modulus(g, xi, grid).value;
        CAPTURE(name);
        CAPTURE(xi);
        CAPTURE(lambda);
        CHECK(lhs <= rhs);
      }
    }
  }
  CHECK_THROWS_AS(weighted_modulus(kE1, 0.0, grid), std::invalid_argument);
}

TEST_CASE("total variation") {
  CHECK(total_variation(kConst, 0.0, 3.0, 4) == 0.0);
  CHECK(total_variation(kE1, 0.0, 1.0, 4) == doctest::Approx(1.0).epsilon(1e-14));
  const TestFunction c = registry_get("cos");
  CHECK(total_variation(c, 0.0, 2.0 * std::numbers::pi, 6) == doctest::Approx(4.0).epsilon(1e-9));
  // A kink on a partition node is resolved exactly; off the nodes the
  // deficit is at most twice the finest spacing.
  CHECK(total_variation(abs_shift(1.0), 0.0, 2.0, 6) == doctest::Approx(2.0).epsilon(1e-14));
  const double finest = 3.0 / (kVariationInitialIntervals * 64);
  CHECK(std::abs(total_variation(abs_shift(1.0), 0.0, 3.0, 6) - 3.0) <= 2.0 * finest);

  SUBCASE("never decreases under refinement") {
    const TestFunction f = registry_get("xcos2x1");
    double prev = 0.0;
    for (int levels = 0; levels <= 6; ++levels) {
      const double v = total_variation(f, 0.0, 5.0, levels);
      CHECK(v >= prev);
      prev = v;
    }
  }
  SUBCASE("superadditive over splits") {
    const TestFunction f = registry_get("xcos2x1");
    for (double mid : {0.7, 2.0, 3.3}) {
      const double whole = total_variation(f, 0.0, 5.0, 8);
      const double parts = total_variation(f, 0.0, mid, 8) + total_variation(f, mid, 5.0, 8);
      CHECK(whole >= parts - 1e-5 * whole);
      CHECK(whole == doctest::Approx(parts).epsilon(1e-5));
    }
  }
  CHECK_THROWS_AS(total_variation(kE1, 1.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(total_variation(registry_get("sqrt"), -1.0, 1.0, 2), std::domain_error);
}

TEST_CASE("doubling the grid changes each modulus by under one percent") {
  const GridSpec base(0.0, 10.0, 1001);
  const GridSpec fine(0.0, 10.0, 2001);
  for (const char* name : {"e2", "xcos2x1", "cos", "sqrt"}) {
    const TestFunction f = registry_get(name);
    CAPTURE(name);
    auto within = [](double a, double b) { return std::abs(a - b) <= 0.01 * std::max(std::abs(a), std::abs(b)); };
    CHECK(within(lipschitz_maximal(f, 1.0, 1.0, base).value, lipschitz_maximal(f, 1.0, 1.0, fine).value));
    CHECK(within(dt_modulus(f, 0.1, base).value, dt_modulus(f, 0.1, fine).value));
    CHECK(within(weighted_modulus(f, 0.1, base).value, weighted_modulus(f, 0.1, fine).value));
    const GridSpec ubase(0.0, 5.0, 201, 0), ufine(0.0, 5.0, 401, 0);
    CHECK(within(lip_uv_constant(f, 1.0, 1.0, 1.0, ubase), lip_uv_constant(f, 1.0, 1.0, 1.0, ufine)));
  }
}
