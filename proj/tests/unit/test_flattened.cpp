#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "catseye/error.hpp"
#include "catseye/flattened.hpp"
#include "catseye/reconstruct.hpp"
#include "manufactured.hpp"
#include "oracles.hpp"

using namespace catseye;
using manufactured::Manufactured;
using manufactured::truncation;

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct Periodic {
  LaminarFlow flow;
  EigenData eig;
  ReducedModel model;
};

Periodic setup() {
  Periodic p;
  p.flow = stream_solution(-0.06, 0.025);
  p.eig = compute_spectrum(p.flow);
  p.model = build_model(p.eig);
  return p;
}

}  // namespace

TEST(Flattened, LaminarIsExactOnAnyGrid) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> un(8, 40), uny(16, 60);
  std::uniform_real_distribution<double> us(-0.12, -0.01), ug(0.0, 0.05), up(1.0, 80.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto flow = stream_solution(us(rng), ug(rng));
    const std::size_t nx = 2 * static_cast<std::size_t>(un(rng));
    const auto grid = StripGrid::periodic_grid(up(rng), nx, static_cast<std::size_t>(uny(rng)), flow.h);
    const auto f = WaveField::laminar(grid, flow);
    for (int yo : {2, 4}) {
      const auto rep = residual_report(f, {8, yo});
      EXPECT_LT(rep.pde_res, 1e-12);
      EXPECT_LT(rep.bern_res, 1e-12);
      EXPECT_EQ(rep.dirichlet_res, 0.0);
    }
    const auto sol = solve_flattened_periodic(flow, f);
    EXPECT_LE(sol.report.iterations, 1u);
    EXPECT_LT(std::max(sol.report.pde_res, sol.report.bern_res), 1e-12);
  }
}

TEST(Flattened, SecondOrderInY) {
  Manufactured m;
  m.flow = stream_solution(-0.06, 0.025);
  std::vector<double> dy, ei, eb;
  for (std::size_t ny : {16u, 32u, 64u, 128u}) {
    const auto [a, b] = truncation(m, 64, ny, {8, 2});
    dy.push_back(m.flow.h / ny);
    ei.push_back(a);
    eb.push_back(b);
  }
  EXPECT_GE(oracle::loglog_slope(dy, ei), 1.9);
  EXPECT_GE(oracle::loglog_slope(dy, eb), 1.9);
}

TEST(Flattened, FourthOrderInYWhenSelected) {
  Manufactured m;
  m.flow = stream_solution(-0.06, 0.025);
  std::vector<double> dy, ei;
  for (std::size_t ny : {16u, 24u, 32u, 48u}) {
    dy.push_back(m.flow.h / ny);
    ei.push_back(truncation(m, 64, ny, {8, 4}).first);
  }
  EXPECT_GE(oracle::loglog_slope(dy, ei), 3.8);
}

TEST(Flattened, EighthOrderInX) {
  Manufactured m;
  m.flow = stream_solution(-0.06, 0.025);
  m.quadratic = true;  // y-stencils exact, so only the x-error remains
  m.k = 3.0;
  std::vector<double> dx, ei;
  for (std::size_t nx : {16u, 20u, 24u, 32u}) {
    dx.push_back(2 * std::numbers::pi / m.k / nx);
    ei.push_back(truncation(m, nx, 16, {8, 2}).first);
  }
  EXPECT_GE(oracle::loglog_slope(dx, ei), 7.0);
}

TEST(Flattened, NewtonConvergesAtHalfLevel) {
  const auto p = setup();
  const auto init = periodic_field(0.5 * p.model.L, p.model, p.eig, p.flow, 256, 48);
  const auto sol = solve_flattened_periodic(p.flow, init);
  EXPECT_TRUE(sol.report.converged);
  EXPECT_LT(sol.report.pde_res, 1e-9);
  EXPECT_LT(sol.report.bern_res, 1e-9);
  EXPECT_EQ(sol.report.dirichlet_res, 0.0);
  EXPECT_LE(sol.report.iterations, 8u);
  EXPECT_GT(sol.report.cond_estimate, 1.0);
  RecordProperty("iterations", static_cast<int>(sol.report.iterations));

  // Quadratic tail while above the rounding floor.
  const auto& hist = sol.report.history;
  ASSERT_GE(hist.size(), 3u);
  for (std::size_t k = 1; k + 1 < hist.size(); ++k) {
    if (hist[k + 1] < 1e-11) break;
    EXPECT_LT(hist[k + 1] / (hist[k] * hist[k]), 1e4) << k;
  }

  // Even about the crest.
  const std::size_t nx = sol.field.grid.nx();
  for (std::size_t k = 1; k < nx / 2; ++k) {
    EXPECT_EQ(sol.field.eta_bar[nx / 2 + k], sol.field.eta_bar[nx / 2 - k]);
  }
  // The correction to the leading-order guess is small but nonzero.
  double d = 0;
  for (std::size_t i = 0; i < nx; ++i) d = std::max(d, std::abs(sol.field.eta_bar[i] - init.eta_bar[i]));
  EXPECT_GT(d, 1e-6);
  EXPECT_LT(d, 0.05);
}

TEST(Flattened, RejectsBadInput) {
  const auto p = setup();
  auto grid = StripGrid::uniform(-10, 10, 64, 16, p.flow.h);
  EXPECT_THROW(solve_flattened_periodic(p.flow, WaveField::laminar(grid, p.flow)), RangeError);
  auto pg = StripGrid::periodic_grid(30, 64, 16, p.flow.h + 0.1);
  EXPECT_THROW(solve_flattened_periodic(p.flow, WaveField::laminar(pg, p.flow)), RangeError);
}

TEST(Flattened, OutOfBasin) {
  const auto p = setup();
  auto init = periodic_field(0.5 * p.model.L, p.model, p.eig, p.flow, 64, 16);
  for (std::size_t i = 0; i < init.grid.nx(); ++i) init.eta_bar[i] = 0.25 * p.flow.h * (1.5 + std::cos(init.grid.x[i]));
  NewtonOptions opt;
  opt.max_iter = 6;
  try {
    solve_flattened_periodic(p.flow, init, opt);
    FAIL() << "expected divergence";
  } catch (const SolverError& e) {
    EXPECT_NE(std::string(e.what()).find("out of basin"), std::string::npos) << e.what();
  }
}

TEST(Flattened, DerivativesOfLaminar) {
  const auto flow = stream_solution(-0.05, 0.01);
  const auto f = WaveField::laminar(StripGrid::periodic_grid(20, 32, 20, flow.h), flow);
  const auto d = field_derivatives(f);
  for (std::size_t i = 0; i < 32; ++i) {
    for (std::size_t j = 0; j < f.grid.rows(); ++j) {
      const std::size_t n = i * f.grid.rows() + j;
      EXPECT_NEAR(d.px[n], 0.0, 1e-13);
      EXPECT_NEAR(d.py[n], f.grid.y(j) + flow.s, 1e-12);
      EXPECT_NEAR(d.pyy[n], 1.0, 1e-10);
    }
    EXPECT_NEAR(d.ex[i], 0.0, 1e-13);
  }
}
