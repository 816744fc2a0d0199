#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dicke/correlations.hpp"
#include "support/test_support.hpp"

using namespace dicke;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("grid layout and the tau = 0 anchor") {
  const SystemParams p = SystemParams::equal_dipoles(1.0, 0.9, kPi / 2, 1.0);
  const CorrelationCurve curve = g_tau(p, 20.0, 401);
  REQUIRE(curve.tau_grid.size() == 401);
  REQUIRE(curve.g_values.size() == 401);
  CHECK(curve.tau_grid.front() == 0.0);
  CHECK(curve.tau_grid.back() == 20.0);
  CHECK(std::abs(curve.i_ss - i_ss_analytic(1.0, 0.9, p.coupling.c12)) < 1e-10);
  CHECK(std::abs(curve.g_values.front() - g0_analytic(1.0, 0.9, p.coupling.c12)) < 1e-8);
}

TEST_CASE("curve relaxes to 1 at long delays") {
  const SystemParams p = SystemParams::equal_dipoles(1.0, 0.9, kPi / 2, 1.0);
  const std::vector<double> taus{50.0, 60.0};
  const std::vector<double> g = g_at_times(p, taus);
  CHECK(std::abs(g[0] - 1.0) < 1e-3);
  CHECK(std::abs(g[1] - 1.0) < 1e-4);
}

TEST_CASE("antibunching for distant atoms rises from one half") {
  const SystemParams p(1.0, 0.9, 0.9, CouplingConstants{});
  const std::vector<double> g = g_at_times(p, {0.0, 0.5, 1.0});
  CHECK(std::abs(g[0] - 0.5) < 1e-8);
  CHECK(g[1] > g[0]);
  CHECK(g[2] > g[1]);
}

TEST_CASE("bunching below the transition distance") {
  const SystemParams p = SystemParams::equal_dipoles(1.0, 0.9, kPi / 2, 0.5);
  const std::vector<double> g = g_at_times(p, {0.0});
  CHECK(g[0] > 1.0);
  CHECK(std::abs(g[0] - g0_analytic(1.0, 0.9, p.coupling.c12)) < 1e-8);
}

TEST_CASE("uncoupled atoms reproduce the one-atom correlation") {
  // With C = 0 the pair factorizes and g(tau) = (1 + g1(tau))/2, with g1 the
  // single-atom correlation; g1 comes from the independent 2x2 oracle.
  const double omega = 1.0;
  const SystemParams p(1.0, omega, omega, CouplingConstants{});
  std::vector<double> taus(21);
  for (int i = 0; i < 21; ++i) taus[i] = 0.5 * i;
  const std::vector<double> g2 = g_at_times(p, taus);
  const std::vector<double> g1 = testsup::one_atom_g(1.0, omega, taus);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    CHECK(std::abs(g2[i] - 0.5 * (1.0 + g1[i])) < 1e-6);
  }
}

TEST_CASE("regression pipeline matches the analytic g(0) across a sweep") {
  SplitMix64 rng(41);
  for (int k = 0; k < 25; ++k) {
    const double theta = 0.25 * kPi * static_cast<double>(rng.next() % 4);
    const double k0r = 0.3 + 9.7 * rng.uniform_open();
    const double omega = 0.05 + 1.95 * rng.uniform_open();
    const SystemParams p = SystemParams::equal_dipoles(1.0, omega, theta, k0r);
    const std::vector<double> g = g_at_times(p, {0.0});
    CHECK(std::abs(g[0] - g0_analytic(1.0, omega, p.coupling.c12)) < 1e-8);
  }
}

TEST_CASE("input validation") {
  const SystemParams p = SystemParams::equal_dipoles(1.0, 0.9, kPi / 2, 1.0);
  CHECK_THROWS_AS(g_tau(p, 0.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(g_tau(p, -2.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(g_tau(p, 5.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(g_at_times(p, {1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(g_at_times(p, {-1.0}), std::invalid_argument);

  const SystemParams dark = SystemParams::equal_dipoles(1.0, 0.0, kPi / 2, 1.0);
  CHECK_THROWS_AS(g_at_times(dark, {0.0}), std::domain_error);
}
