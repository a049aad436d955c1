#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "frontwave/model.hpp"
#include "oracles.hpp"

using namespace frontwave;

TEST_CASE("nondimensionalize maps the dimensional ratios") {
  ModelParams m = nondimensionalize({1, 1, 1, 1, 1, 1, 1, 1}, 1);
  CHECK(m.a == 1.0);
  CHECK(m.b == 1.0);
  CHECK(m.s == 1.0);
  CHECK(m.g == 1.0);
  CHECK(m.d == 1.0);

  DimensionalParams p;
  p.D = 1;
  p.D_h = 2;
  p.r_f = 2;
  p.r_c = 1;
  p.r_h = 0.5;
  p.K = 2;
  p.L = 2;
  p.e_conv = 0.25;
  m = nondimensionalize(p, 2);
  CHECK(m.a == doctest::Approx(2.0));
  CHECK(m.b == doctest::Approx(0.5));
  CHECK(m.s == doctest::Approx(0.5));
  CHECK(m.g == doctest::Approx(1.0));
  CHECK(m.d == doctest::Approx(2.0));
  CHECK(m.dim_N == 2);
}

TEST_CASE("nondimensionalize rejects slower hunter-gatherer diffusion") {
  DimensionalParams p;
  p.D = 2;
  p.D_h = 1;
  CHECK_THROWS_AS(nondimensionalize(p, 1), ConfigError);
  DimensionalParams q;
  q.r_c = -1;
  CHECK_THROWS_AS(nondimensionalize(q, 1), ConfigError);
}

TEST_CASE("spreading speeds") {
  const auto v0 = spreading_speeds({1.0, 1.0, 1e-12, 1.0, 1.0, 1});
  CHECK(v0.c_star == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(v0.c_star_star == doctest::Approx(2.0).epsilon(1e-9));

  const auto v1 = spreading_speeds({2.0, 1.0, 0.5, 1.0, 1.0, 1});
  CHECK(v1.c_star == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(v1.c_star_star == doctest::Approx(2.0 * std::sqrt(1.5)));
  CHECK(v1.lambda_star == doctest::Approx(std::sqrt(2.0)));

  const auto v2 = spreading_speeds({1.5, 1.0, 0.5, 1.0, 1.0, 1});
  CHECK(v2.c_star == doctest::Approx(2.0 * std::sqrt(1.5)));
  CHECK(v2.c_star == v2.c_star_star);
}

TEST_CASE("doubling a raises c* exactly when 2a exceeds 1+s") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  for (int trial = 0; trial < 500; ++trial) {
    ModelParams m{u(rng), 1.0, u(rng), 1.0, 1.0, 1};
    ModelParams m2 = m;
    m2.a = 2.0 * m.a;
    const double c1 = spreading_speeds(m).c_star;
    const double c2 = spreading_speeds(m2).c_star;
    CHECK((c2 > c1) == (m2.a > 1.0 + m.s));
    CHECK(spreading_speeds(m).c_star >= spreading_speeds(m).c_star_star);
  }
}

TEST_CASE("coexistence state") {
  auto cx = coexistence_state({1, 1, 0.5, 0.5, 1, 1});
  REQUIRE(cx.has_value());
  CHECK(cx->C_star == doctest::Approx(1.2));
  CHECK(cx->H_star == doctest::Approx(0.4));

  CHECK_FALSE(coexistence_state({1, 1, 0.5, 1.0, 1, 1}).has_value());
  CHECK_FALSE(coexistence_state({1, 1, 0.5, 2.0, 1, 1}).has_value());
}

TEST_CASE("coexistence state agrees with a root-finder on the ode rhs") {
  const ModelParams m{1, 1, 0.5, 0.4, 1, 1};
  auto cx = coexistence_state(m);
  REQUIRE(cx.has_value());
  CHECK(cx->C_star == doctest::Approx(1.25));
  CHECK(cx->H_star == doctest::Approx(0.5));

  auto rhs2 = [&m](double C, double H) {
    return std::pair<double, double>{C * (1.0 - C) + m.s * C * H,
                                     m.b * H * (1.0 - H - m.g * C)};
  };
  const auto [C_root, H_root] = oracles::newton2d(rhs2, 1.0, 0.6);
  CHECK(std::abs(C_root - cx->C_star) < 1e-9);
  CHECK(std::abs(H_root - cx->H_star) < 1e-9);
  const auto [rc, rh] = rhs2(cx->C_star, cx->H_star);
  CHECK(std::abs(rc) < 1e-12);
  CHECK(std::abs(rh) < 1e-12);
}

TEST_CASE("steady states") {
  {
    const auto fams = steady_states({1, 1, 1, 2, 1, 1});
    CHECK(fams.size() == 3);  // coexistence absent for g >= 1
    for (const auto& f : fams)
      CHECK(f.kind != SteadyStateFamily::Kind::Coexistence);
  }
  {
    const ModelParams m{1, 1, 0.5, 0.5, 1, 1};
    const auto fams = steady_states(m);
    CHECK(fams.size() == 4);
    bool found = false;
    for (const auto& f : fams) {
      if (f.kind == SteadyStateFamily::Kind::Coexistence) {
        found = true;
        CHECK(f.state()[1] == doctest::Approx(1.2));
        CHECK(f.state()[2] == doctest::Approx(0.4));
      }
    }
    CHECK(found);
    // Every returned family zeroes the full reaction rhs.
    for (const auto& f : fams) {
      for (double theta : {0.0, 0.25, 1.0}) {
        const auto res = reaction_rhs(f.state(theta), m);
        CHECK(res.cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
  {
    // No interior (all components positive) state when g >= 1.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
      ModelParams m{u(rng), u(rng), u(rng), 1.0 + u(rng), 1.0, 1};
      for (const auto& f : steady_states(m)) {
        const auto x = f.state(0.5);
        CHECK_FALSE((x[0] > 0 && x[1] > 0 && x[2] > 0));
      }
    }
  }
}

TEST_CASE("regime classification") {
  auto fig1 = classify_regime({4, 1, 0.5, 2, 1, 1});
  CHECK(fig1.conversion == Conversion::High);
  CHECK(fig1.front_order == FrontOrder::FarmerFast);
  CHECK(fig1.waveform_figure == 1);

  auto fig4 = classify_regime({1, 1, 1, 0.5, 1, 1});
  CHECK(fig4.conversion == Conversion::Low);
  CHECK(fig4.front_order == FrontOrder::FarmerSlow);
  CHECK(fig4.waveform_figure == 4);

  auto deg = classify_regime({1.5, 1, 0.5, 1, 1, 1});
  CHECK(deg.front_order == FrontOrder::Degenerate);
  CHECK(deg.conversion == Conversion::High);
  CHECK(deg.waveform_figure == 2);

  CHECK(classify_regime({1, 1, 1, 2, 1, 1}).waveform_figure == 2);
  CHECK(classify_regime({4, 1, 0.5, 0.4, 1, 1}).waveform_figure == 3);
}

TEST_CASE("regime map ignores b and d") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  for (int trial = 0; trial < 200; ++trial) {
    ModelParams m{u(rng), u(rng), u(rng), u(rng), 1.0 + u(rng), 1};
    ModelParams m2 = m;
    m2.b = u(rng);
    m2.d = 1.0 + u(rng);
    const auto r1 = classify_regime(m);
    const auto r2 = classify_regime(m2);
    CHECK(r1.waveform_figure == r2.waveform_figure);
    CHECK(r1.conversion == r2.conversion);
    CHECK(r1.front_order == r2.front_order);
  }
}

TEST_CASE("log drift coefficients") {
  {
    const auto k = log_drift_coefficients({4, 1, 0.5, 1, 1, 1});
    CHECK(k.front_order == FrontOrder::FarmerFast);
    REQUIRE(k.k_total_lower.has_value());
    REQUIRE(k.k_upper.has_value());
    CHECK(*k.k_total_lower == doctest::Approx(12.0));
    CHECK(*k.k_upper == doctest::Approx(0.75));
  }
  {
    const auto k = log_drift_coefficients({1, 1, 1, 1, 1, 1});
    REQUIRE(k.k_converted.has_value());
    CHECK(*k.k_converted == doctest::Approx(3.0 / (2.0 * std::sqrt(2.0))));
    CHECK_FALSE(k.k_total_lower.has_value());
  }
  {
    const auto k = log_drift_coefficients({1.5, 1, 0.5, 1, 1, 2});
    const double c_star = 2.0 * std::sqrt(1.5);
    REQUIRE(k.k_total_lower.has_value());
    REQUIRE(k.k_hunter_lower.has_value());
    CHECK(*k.k_total_lower == doctest::Approx(4.0 / c_star));
    CHECK(*k.k_hunter_lower == doctest::Approx(2.0 / c_star));
  }
}

TEST_CASE("coexistence sufficient condition") {
  {
    const auto r = coexistence_sufficient_condition({1, 1, 0.5, 0.4, 1, 1});
    CHECK(r.satisfied);
    CHECK(r.small_conversion_branch);
  }
  {
    const auto r = coexistence_sufficient_condition({1, 30, 1, 0.9, 1, 1});
    CHECK(r.satisfied);
    CHECK_FALSE(r.small_conversion_branch);
    CHECK(r.fast_hunter_branch);
  }
  {
    const auto r = coexistence_sufficient_condition({1, 1, 1, 0.9, 1, 1});
    CHECK_FALSE(r.satisfied);
  }
  CHECK_THROWS_AS(coexistence_sufficient_condition({1, 1, 1, 1.5, 1, 1}),
                  DomainError);
}
