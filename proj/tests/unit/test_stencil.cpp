#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "catseye/stencil.hpp"
#include "oracles.hpp"

using namespace catseye;

TEST(Stencil, FornbergReproducesPolynomials) {
  const std::vector<double> nodes{-1.3, -0.2, 0.4, 1.1, 2.5};
  const auto w = fd_weights(0.1, nodes, 2);
  for (int p = 0; p <= 4; ++p) {
    double d0 = 0, d1 = 0, d2 = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double v = std::pow(nodes[k], p);
      d0 += w[0][k] * v;
      d1 += w[1][k] * v;
      d2 += w[2][k] * v;
    }
    EXPECT_NEAR(d0, std::pow(0.1, p), 1e-13);
    EXPECT_NEAR(d1, p * std::pow(0.1, p - 1), 1e-12);
    EXPECT_NEAR(d2, p < 2 ? 0.0 : p * (p - 1) * std::pow(0.1, p - 2), 1e-11);
  }
}

TEST(Stencil, ClassicCentredWeights) {
  const auto p = PeriodicStencils::centred(1.0, 1);
  EXPECT_NEAR(p.d1[0], -0.5, 1e-15);
  EXPECT_NEAR(p.d1[2], 0.5, 1e-15);
  EXPECT_NEAR(p.d2[0], 1.0, 1e-15);
  EXPECT_NEAR(p.d2[1], -2.0, 1e-15);
}

TEST(Stencil, LineStencilsOrder) {
  for (int order : {2, 4}) {
    std::vector<double> hs, e1, e2;
    for (std::size_t n : {21u, 41u, 81u, 161u}) {
      const double d = 1.0 / static_cast<double>(n - 1);
      const auto st = LineStencils::uniform(n, d, order);
      double m1 = 0, m2 = 0;
      for (std::size_t j = 0; j < n; ++j) {
        double a1 = 0, a2 = 0;
        for (std::size_t k = 0; k < st.d1[j].weight.size(); ++k) a1 += st.d1[j].weight[k] * std::sin(2.0 * (st.d1[j].first + k) * d);
        for (std::size_t k = 0; k < st.d2[j].weight.size(); ++k) a2 += st.d2[j].weight[k] * std::sin(2.0 * (st.d2[j].first + k) * d);
        const double y = j * d;
        m1 = std::max(m1, std::abs(a1 - 2.0 * std::cos(2.0 * y)));
        m2 = std::max(m2, std::abs(a2 + 4.0 * std::sin(2.0 * y)));
      }
      hs.push_back(d);
      e1.push_back(m1);
      e2.push_back(m2);
    }
    EXPECT_GE(oracle::loglog_slope(hs, e1), order - 0.1) << order;
    EXPECT_GE(oracle::loglog_slope(hs, e2), order - 0.1) << order;
  }
}

TEST(Stencil, QuadraticsExactInSecondOrder) {
  const auto st = LineStencils::uniform(17, 0.1, 2);
  for (std::size_t j = 0; j < 17; ++j) {
    double a1 = 0, a2 = 0;
    for (std::size_t k = 0; k < st.d1[j].weight.size(); ++k) {
      const double y = 0.1 * (st.d1[j].first + k);
      a1 += st.d1[j].weight[k] * (y * y - 3 * y);
    }
    for (std::size_t k = 0; k < st.d2[j].weight.size(); ++k) {
      const double y = 0.1 * (st.d2[j].first + k);
      a2 += st.d2[j].weight[k] * (y * y - 3 * y);
    }
    EXPECT_NEAR(a1, 2 * 0.1 * j - 3, 1e-12);
    EXPECT_NEAR(a2, 2.0, 1e-11);
  }
}

TEST(Stencil, PeriodicEighthOrder) {
  std::vector<double> hs, e;
  for (int n : {16, 20, 24, 32}) {
    const double d = 2 * M_PI / n;
    const auto p = PeriodicStencils::centred(d, 4);
    double a = 0;
    for (long m = -4; m <= 4; ++m) a += p.d1[m + 4] * std::sin(3.0 * m * d);
    hs.push_back(d);
    e.push_back(std::abs(a - 3.0));
  }
  EXPECT_GE(oracle::loglog_slope(hs, e), 7.5);
}
