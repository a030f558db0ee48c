#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "catseye/error.hpp"
#include "catseye/laminar.hpp"
#include "oracles.hpp"

using namespace catseye;

TEST(Laminar, ClosedFormsAtZero) {
  const auto f = stream_solution(0.0, 0.0);
  EXPECT_DOUBLE_EQ(f.h, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(f.k, std::sqrt(2.0));
  EXPECT_NEAR(f.kappa, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(f.Rbar, 2.0, 1e-15);
}

TEST(Laminar, CounterCurrentExample) {
  const auto f = stream_solution(-0.1, 0.0);
  EXPECT_NEAR(f.h, 0.1 + std::sqrt(2.01), 1e-15);
  EXPECT_NEAR(f.k, std::sqrt(2.01), 1e-15);
  EXPECT_NEAR(f.Rbar, 2.01, 1e-14);
}

TEST(Laminar, UnitFluxAndCriticalLevel) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> us(-0.14, 0.14), ug(0.0, 0.05);
  for (int i = 0; i < 200; ++i) {
    const double s = us(rng);
    const auto f = stream_solution(s, ug(rng));
    EXPECT_NEAR(f.stream(f.h), 1.0, 1e-14);
    EXPECT_NEAR(f.k, f.h + s, 1e-14);
    if (s < 0) EXPECT_EQ(laminar_velocity(f, -s), 0.0);
  }
}

TEST(Laminar, VelocityRange) {
  const auto f = stream_solution(-0.1, 0.0);
  EXPECT_DOUBLE_EQ(laminar_velocity(f, 0.0), -0.1);
  EXPECT_NEAR(laminar_velocity(f, 0.1), 0.0, 1e-17);
  EXPECT_NEAR(laminar_velocity(stream_solution(0, 0), std::sqrt(2.0)), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(laminar_velocity(f, -0.01), RangeError);
  EXPECT_THROW(laminar_velocity(f, f.h + 0.01), RangeError);
}

TEST(Laminar, KappaAsymptoticsSlope) {
  std::vector<double> eps{1e-1, 5e-2, 2e-2, 1e-2, 5e-3, 2e-3, 1e-3}, err;
  for (double e : eps) {
    const double s = -e / std::sqrt(2.0), g = e / std::sqrt(2.0);
    const auto f = stream_solution(s, g);
    err.push_back(std::abs(f.kappa * f.h - 1.0 - (g - s) / std::sqrt(2.0)));
  }
  EXPECT_GE(oracle::loglog_slope(eps, err), 1.9);
}

TEST(Laminar, ConjugateSymmetricWithoutGravity) {
  const auto c = conjugate_flow(-0.1, 0.0);
  EXPECT_NEAR(c.s, 0.1, 1e-14);
  EXPECT_FALSE(c.degenerate);
}

TEST(Laminar, ConjugateMatchesBisectionOracle) {
  const double s = -0.05, g = 0.001;
  const double R = bernoulli_constant(s, g);
  const auto c = conjugate_flow(s, g);
  const double ref = oracle::bisect([&](double sp) { return bernoulli_constant(sp, g) - R; }, 1e-6, 0.2);
  EXPECT_NEAR(c.s, ref, 1e-13);
  EXPECT_LT(std::abs(bernoulli_constant(c.s, g) - R), 1e-12);
  EXPECT_NEAR(c.h, stream_solution(c.s, g).h, 1e-15);
  EXPECT_GT(c.s, 0.0);
}

TEST(Laminar, ConjugateSweepPreservesBernoulli) {
  for (double s : {-0.14, -0.1, -0.05, -0.01, -0.001}) {
    for (double g : {0.0, 1e-4, 1e-3, 0.01, 0.03}) {
      const auto c = conjugate_flow(s, g);
      EXPECT_LT(std::abs(bernoulli_constant(c.s, g) - bernoulli_constant(s, g)), 1e-12) << s << " " << g;
      EXPECT_GT(c.s, 0.0);
    }
  }
}

TEST(Laminar, ConjugateDegenerateAndErrors) {
  const auto c = conjugate_flow(0.0, 0.0);
  EXPECT_TRUE(c.degenerate);
  EXPECT_EQ(c.s, 0.0);
  EXPECT_THROW(conjugate_flow(0.1, 0.0), DomainError);
}

TEST(Laminar, ScalingRoundTrip) {
  EXPECT_DOUBLE_EQ(physical_from_scaled(100.0, std::sqrt(2.0)), std::sqrt(2.0) / 10.0);
  EXPECT_EQ(physical_from_scaled(1.0, 1.0), 1.0);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ub(1.0, 1e4), ul(-50, 50);
  for (int i = 0; i < 500; ++i) {
    const double b = ub(rng), l = ul(rng);
    EXPECT_NEAR(scaled_from_physical(b, physical_from_scaled(b, l)), l, 2.3e-16 * std::abs(l));
  }
}

TEST(Laminar, ParamsDeriveGamma) {
  const PhysicalParams p(100.0, -0.001);
  EXPECT_NEAR(p.gamma(), 1e-3, 1e-18);
  EXPECT_TRUE(p.admissible());
  EXPECT_NEAR(PhysicalParams::from_gamma(1e-3, 0.0).b(), 100.0, 1e-10);
  EXPECT_THROW(PhysicalParams(0.0, 0.0), RangeError);
  EXPECT_FALSE(PhysicalParams(1.0, -0.2).admissible());
  EXPECT_FALSE(admissibility_warnings(-0.2, 0.0).empty());
  EXPECT_TRUE(admissibility_warnings(-0.05, 0.01).empty());
}
