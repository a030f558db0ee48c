#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "catseye/error.hpp"
#include "catseye/spectrum.hpp"
#include "oracles.hpp"

using namespace catseye;

namespace {

double inner(const Eigenfunction& a, const Eigenfunction& b, double h) {
  return oracle::simpson([&](double y) { return a(y) * b(y); }, 0.0, h, 20000);
}

}  // namespace

TEST(Spectrum, GramDefectAgreesWithSimpson) {
  const auto e = compute_spectrum(stream_solution(-0.06, 0.025), 5);
  double worst = 0.0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      worst = std::max(worst, std::abs(inner(e.phi[i], e.phi[j], e.h) - (i == j ? 1.0 : 0.0)));
  EXPECT_LT(gram_defect(e.phi, e.h), 1e-12);
  EXPECT_NEAR(gram_defect(e.phi, e.h), worst, 1e-11);
  auto bad = e.phi;
  bad[2] = Eigenfunction(bad[2].shape(), 1.01 * bad[2].amplitude(), bad[2].wavenumber());
  EXPECT_NEAR(gram_defect(bad, e.h), 1.01 * 1.01 - 1.0, 1e-10);
}

TEST(Spectrum, DispersionResidualAndOracle) {
  const double x = dispersion_root_scaled(1.2);
  EXPECT_LT(std::abs(x / std::tanh(x) - 1.2), 1e-13);
  const double ref = oracle::bisect([](double z) { return z / std::tanh(z) - 1.2; }, 1e-3, 5.0);
  EXPECT_NEAR(x, ref, 1e-13);
}

TEST(Spectrum, DispersionThreshold) {
  EXPECT_THROW(dispersion_root_scaled(1.0), DomainError);
  EXPECT_THROW(dispersion_root_scaled(0.9), DomainError);
  double prev = 1.0;
  for (double d : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const double x = dispersion_root_scaled(1.0 + d);
    EXPECT_LT(x, prev);
    EXPECT_NEAR(x * x, 3.0 * d, 3.0 * d * d * 2.0);
    prev = x;
  }
}

TEST(Spectrum, ErrorMessageNamesRegime) {
  try {
    dispersion_root(stream_solution(0.05, 0.0));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("counter-current"), std::string::npos);
  }
}

TEST(Spectrum, DispersionAsymptoticSlope) {
  std::vector<double> eps{0.1, 0.05, 0.02, 0.01, 0.005}, err;
  for (double e : eps) {
    const auto f = stream_solution(-e / std::sqrt(2.0), e / std::sqrt(2.0));
    const double th = dispersion_root(f) * f.h;
    err.push_back(std::abs(th * th - 3.0 * (f.gamma - f.s) / std::sqrt(2.0)));
  }
  EXPECT_GE(oracle::loglog_slope(eps, err), 1.9);
}

TEST(Spectrum, OrthonormalAndRobin) {
  const auto f = stream_solution(-0.05, 0.01);
  const auto e = compute_spectrum(f, 5);
  ASSERT_EQ(e.phi.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_LT(std::abs(e.phi[i](0.0)), 1e-15);
    EXPECT_LT(std::abs(robin_residual(e.phi[i], e.h, e.kappa)), 1e-10);
    for (std::size_t j = 0; j <= i; ++j) {
      EXPECT_NEAR(inner(e.phi[i], e.phi[j], e.h), i == j ? 1.0 : 0.0, 1e-10) << i << "," << j;
    }
  }
  EXPECT_NEAR(e.mu[0], -e.tau * e.tau, 1e-15);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_GT(e.mu[i], e.mu[i - 1]);
}

TEST(Spectrum, EigenfunctionSolvesOde) {
  const auto e = compute_spectrum(stream_solution(-0.08, 0.02), 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (double y = 0.0; y <= e.h; y += 0.1) {
      EXPECT_NEAR(-e.phi[i].second_derivative(y), e.mu[i] * e.phi[i](y), 1e-10 * (1 + std::abs(e.mu[i])));
    }
  }
}

TEST(Spectrum, SecondEigenvalueBound) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int sampled = 0;
  while (sampled < 100) {
    const double s = -0.15 * std::abs(u(rng)), g = 0.15 * std::abs(u(rng));
    if (s * s + g * g >= 0.15 * 0.15 || s >= 0) continue;
    const auto f = stream_solution(s, g);
    if (f.kappa * f.h <= 1.0) continue;
    const auto e = compute_spectrum(f, 3);
    EXPECT_GT(e.mu[1], std::numbers::pi * std::numbers::pi / 2.0);
    ++sampled;
  }
}

TEST(Spectrum, RobinModesAllRegimes) {
  // q = kappa h above, at and below 1: roots of the transcendental equations by bisection.
  const double h = 1.3;
  for (double q : {1.4, 1.0, 0.5, -0.3}) {
    const auto modes = robin_modes(h, q / h, 4);
    ASSERT_EQ(modes.size(), 4u);
    for (const auto& m : modes) {
      EXPECT_LT(std::abs(robin_residual(m.phi, h, q / h)), 1e-10);
      EXPECT_NEAR(inner(m.phi, m.phi, h), 1.0, 1e-10);
    }
    if (q > 1.0) EXPECT_LT(modes[0].mu, 0.0);
    if (q == 1.0) EXPECT_NEAR(modes[0].mu, 0.0, 1e-6);
    if (q < 1.0) EXPECT_GT(modes[0].mu, 0.0);
    if (q < 1.0) {
      const double z = oracle::bisect([&](double w) { return q * std::sin(w) - w * std::cos(w); }, 1e-9,
                                      q > 0 ? std::numbers::pi / 2 + 1.0 : std::numbers::pi - 1e-12);
      EXPECT_NEAR(std::sqrt(modes[0].mu) * h, z, 1e-10);
    }
  }
}

TEST(Spectrum, CentreModeSlope) {
  EXPECT_NEAR(c0_leading(), std::sqrt(3.0 / std::pow(2.0, 1.5)), 1e-15);
  EXPECT_NEAR(c0_leading(), 1.0298835, 1e-6);
  std::vector<double> eps{0.04, 0.02, 0.01, 0.005}, err;
  for (double e : eps) {
    const auto s = compute_spectrum(stream_solution(-e / std::sqrt(2.0), e / std::sqrt(2.0)), 2);
    EXPECT_NEAR(s.c0_effective, s.phi[0].derivative(0.0), 1e-15);
    err.push_back(std::abs(s.c0_effective - c0_leading()));
  }
  // The slope converges to the limit value like epsilon.
  EXPECT_GE(oracle::loglog_slope(eps, err), 0.9);
}
