#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "frontwave/ode.hpp"
#include "oracles.hpp"

using namespace frontwave;

namespace {
const ModelParams kLow{1.0, 1.0, 0.5, 0.4, 1.0, 1};  // coexistence at (1.25, 0.5)
}

TEST_CASE("ode_rhs values") {
  {
    const ModelParams m{1, 1, 0.5, 0.5, 1, 1};
    const auto f = ode_rhs({1.2, 0.4}, m);  // (C*, H*) for s=g=0.5
    CHECK(std::abs(f[0]) < 1e-15);
    CHECK(std::abs(f[1]) < 1e-15);
    const auto g = ode_rhs({1.0, 0.0}, m);
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 0.0);
    const auto h = ode_rhs({0.5, 0.5}, m);
    CHECK(h[0] == doctest::Approx(0.375));
    CHECK(h[1] == doctest::Approx(0.125));
  }
}

TEST_CASE("integrate_ode holds the equilibrium") {
  const auto traj = integrate_ode({1.25, 0.5}, kLow, ode_max_dt(kLow), 50.0);
  for (const auto& x : traj.states) {
    CHECK(std::abs(x.C - 1.25) < 1e-12);
    CHECK(std::abs(x.H - 0.5) < 1e-12);
  }
}

TEST_CASE("integrate_ode rejects oversized steps and diverging states") {
  CHECK_THROWS_AS(integrate_ode({0.5, 0.5}, kLow, 1.0, 10.0), ConfigError);
  CHECK_THROWS_AS(integrate_ode({-0.5, 0.5}, kLow, ode_max_dt(kLow), 10.0),
                  NumericsError);
}

TEST_CASE("step-doubling ratio of the one-step method is ~16") {
  auto endpoint = [&](double dt) {
    OdeState last{0.1, 0.9};
    integrate_ode_observe(OdeState{0.1, 0.9}, kLow, dt, 2.0,
                          [&](double, const OdeState& x) { last = x; });
    return last;
  };
  const auto a = endpoint(0.004), b = endpoint(0.002), c = endpoint(0.001);
  const double ratio = std::hypot(a.C - b.C, a.H - b.H) /
                       std::hypot(b.C - c.C, b.H - c.H);
  CHECK(ratio >= 14.0);
  CHECK(ratio <= 18.0);
}

TEST_CASE("trajectories converge to the coexistence state") {
  const auto traj = integrate_ode({0.1, 0.9}, kLow, ode_max_dt(kLow), 200.0);
  CHECK(std::abs(traj.back().C - 1.25) < 1e-6);
  CHECK(std::abs(traj.back().H - 0.5) < 1e-6);
}

TEST_CASE("lyapunov closed form") {
  CHECK(lyapunov({1.25, 0.5}, kLow) == 0.0);
  CHECK(lyapunov({0.7, 0.3}, kLow) > 0.0);
  CHECK(lyapunov({1.4, 0.9}, kLow) > 0.0);
  CHECK_THROWS_AS(lyapunov({-0.1, 0.5}, kLow), DomainError);
  CHECK_THROWS_AS(lyapunov({0.5, 0.0}, kLow), DomainError);
  ModelParams high = kLow;
  high.g = 1.5;
  CHECK_THROWS_AS(lyapunov({0.5, 0.5}, high), DomainError);
}

TEST_CASE("lyapunov matches quadrature of its integral form") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uc(0.05, 1.45), uh(0.05, 0.95);
  const double C_star = 1.25, H_star = 0.5;
  for (int trial = 0; trial < 100; ++trial) {
    const OdeState x{uc(rng), uh(rng)};
    const double by_quadrature =
        kLow.b * kLow.g *
            oracles::adaptive_simpson(
                [&](double eta) { return (eta - C_star) / eta; }, C_star, x.C,
                1e-13) +
        kLow.s * oracles::adaptive_simpson(
                     [&](double xi) { return (xi - H_star) / xi; }, H_star, x.H,
                     1e-13);
    CHECK(std::abs(lyapunov(x, kLow) - by_quadrature) < 1e-10);
  }
}

TEST_CASE("dissipation identity and spot value") {
  CHECK(lyapunov_dissipation({1.25, 0.5}, kLow) == 0.0);
  // At (0.5, 0.5): -bg (C-C*)^2 - bs (H-H*)^2 = -0.4 * 0.5625 = -0.225.
  CHECK(lyapunov_dissipation({0.5, 0.5}, kLow) == doctest::Approx(-0.225));

  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> uc(0.05, 1.45), uh(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const OdeState x{uc(rng), uh(rng)};
    const double via_chain = lyapunov_gradient(x, kLow).dot(ode_rhs(x, kLow));
    CHECK(std::abs(lyapunov_dissipation(x, kLow) - via_chain) < 1e-10);
    CHECK(lyapunov_dissipation(x, kLow) <= 0.0);
  }
}

TEST_CASE("lyapunov hessian is positive on sampled states") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uc(0.05, 1.45), uh(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const double C = uc(rng), H = uh(rng);
    // Hessian of the closed form is diag(bg C*/C^2, s H*/H^2).
    const double hC = kLow.b * kLow.g * 1.25 / (C * C);
    const double hH = kLow.s * 0.5 / (H * H);
    CHECK(hC > 0.0);
    CHECK(hH > 0.0);
    // Finite-difference curvature agrees in sign.
    const double h = 1e-5;
    const double d2C = lyapunov({C + h, H}, kLow) - 2 * lyapunov({C, H}, kLow) +
                       lyapunov({C - h, H}, kLow);
    CHECK(d2C > 0.0);
  }
}

TEST_CASE("phi decreases along trajectories and sigma is invariant") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> uc(1e-3, 1.5 - 1e-3),
      uh(1e-3, 1.0 - 1e-3);
  const double dt = ode_max_dt(kLow);
  for (int trial = 0; trial < 50; ++trial) {
    const OdeState x0{uc(rng), uh(rng)};
    double phi_prev = lyapunov(x0, kLow);
    integrate_ode_observe(x0, kLow, dt, 50.0, [&](double t, const OdeState& x) {
      if (t == 0.0) return;
      const double phi = lyapunov(x, kLow);
      CHECK(phi <= phi_prev + 1e-8 * dt);
      phi_prev = phi;
      CHECK(x.C > -1e-8);
      CHECK(x.C < 1.5 + 1e-8);
      CHECK(x.H > -1e-8);
      CHECK(x.H < 1.0 + 1e-8);
    });
  }
}
