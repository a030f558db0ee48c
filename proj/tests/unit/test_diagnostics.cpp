#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "catseye/diagnostics.hpp"
#include "catseye/reconstruct.hpp"
#include "oracles.hpp"

using namespace catseye;

namespace {

struct Case {
  LaminarFlow flow;
  EigenData eig;
  ReducedModel model;
  double b;
};

Case make(double s, double g) {
  Case c;
  c.flow = stream_solution(s, g);
  c.eig = compute_spectrum(c.flow);
  c.model = build_model(c.eig);
  c.b = std::pow(g, -2.0 / 3.0);
  return c;
}

const NewtonResult& half_level(std::size_t nx, std::size_t ny) {
  static std::map<std::pair<std::size_t, std::size_t>, NewtonResult> cache;
  auto key = std::make_pair(nx, ny);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const auto c = make(-0.06, 0.025);
    auto init = periodic_field(0.5 * c.model.L, c.model, c.eig, c.flow, nx, ny);
    it = cache.emplace(key, solve_flattened_periodic(c.flow, init)).first;
  }
  return it->second;
}

}  // namespace

TEST(Diagnostics, LaminarIsDegenerate) {
  const auto c = make(-0.08, 0.02);
  const auto f = WaveField::laminar(StripGrid::periodic_grid(30, 64, 40, c.flow.h), c.flow);
  const auto rep = diagnose(f, c.b);
  EXPECT_TRUE(rep.degenerate_laminar);
  EXPECT_TRUE(rep.bottom_stagnation.empty());
  EXPECT_TRUE(rep.interior_stagnation.empty());
  EXPECT_TRUE(rep.critical_streamline.empty());
  ASSERT_EQ(rep.critical_level.size(), 1u);
  for (const auto& p : rep.critical_level[0].points) EXPECT_NEAR(p.y, 0.08 / std::sqrt(c.b), 1e-12);
  EXPECT_LT(rep.flowforce_var, 1e-14);
  EXPECT_FALSE(certify(rep).passed());
}

TEST(Diagnostics, PeriodicWaveStructure) {
  const auto& sol = half_level(256, 48);
  const auto c = make(-0.06, 0.025);
  const auto rep = diagnose(sol.field, c.b);
  ASSERT_EQ(rep.bottom_stagnation.size(), 2u);
  EXPECT_NEAR(rep.bottom_stagnation[0], -rep.bottom_stagnation[1], 1e-9);  // symmetric
  ASSERT_EQ(rep.interior_stagnation.size(), 1u);
  EXPECT_EQ(rep.interior_stagnation[0].type, StagnationType::Center);
  EXPECT_LT(std::abs(rep.interior_stagnation[0].X), rep.grid_dx);
  EXPECT_GT(rep.crest_streamline_height, rep.crest_level_height);
  const auto cert = certify(rep);
  for (const auto& ch : cert.checks) EXPECT_TRUE(ch.passed) << ch.name << ": " << ch.detail;
}

TEST(Diagnostics, BottomPointsAgreeWithRefinedGrid) {
  const auto c = make(-0.06, 0.025);
  const auto a = find_stagnation(half_level(256, 48).field, c.b);
  const auto b = find_stagnation(half_level(512, 48).field, c.b);
  ASSERT_EQ(a.bottom_stagnation.size(), 2u);
  ASSERT_EQ(b.bottom_stagnation.size(), 2u);
  for (int k = 0; k < 2; ++k) EXPECT_NEAR(a.bottom_stagnation[k], b.bottom_stagnation[k], a.grid_dx * 0.1);
}

TEST(Diagnostics, BottomPolishAgainstBisection) {
  // Oracle: bisection on the reconstructed (analytic) bottom velocity of the leading-order field.
  const auto c = make(-0.06, 0.025);
  const auto f = periodic_field(0.5 * c.model.L, c.model, c.eig, c.flow, 512, 48);
  const auto rep = find_stagnation(f, c.b);
  ASSERT_EQ(rep.bottom_stagnation.size(), 2u);
  const double ell = 0.5 * c.model.L;
  auto velocity = [&](double x) {
    std::vector<double> x1{c.eig.tau * std::abs(x)};
    const auto o = sample_periodic_orbit(ell, c.model, x1);
    return hatphi_y_near_bottom(c.eig.tau * c.eig.tau * o.samples[0].alpha1, 0.0, c.eig, c.flow);
  };
  const double x_ref = oracle::bisect(velocity, 0.0, 0.5 * f.grid.period);
  // One-sided second-order y-derivative on the bottom row: O(dy^2) shift.
  EXPECT_NEAR(rep.bottom_stagnation[1] * std::sqrt(c.b), x_ref, 0.05);
}

TEST(Diagnostics, LeadingOrderSolitaryField) {
  const double b = 200.0, g = std::pow(b, -1.5);
  const auto c = make(-0.05, g);
  const auto f = solitary_field(c.model, c.eig, c.flow, {601, 64, 30.0});
  const auto rep = diagnose(f, b);
  EXPECT_EQ(rep.bottom_stagnation.size(), 2u);
  ASSERT_EQ(rep.interior_stagnation.size(), 1u);
  EXPECT_EQ(rep.interior_stagnation[0].type, StagnationType::Center);
  EXPECT_LT(std::abs(rep.interior_stagnation[0].X), rep.grid_dx);
  EXPECT_TRUE(rep.open_domain);
  EXPECT_DOUBLE_EQ(rep.far_field_depth, f.eta_bar.front() / std::sqrt(b));
  EXPECT_NEAR(rep.conjugate_depth, conjugate_flow(-0.05, g).h / std::sqrt(b), 1e-15);
  // The leading-order far state misses the conjugate depth at O(tau^4) relative.
  const double tau = c.eig.tau;
  EXPECT_LT(std::abs(rep.far_field_depth - rep.conjugate_depth) / rep.conjugate_depth, 4 * std::pow(tau, 4));
  const auto cert = certify(rep);
  for (const auto& chk : cert.checks) EXPECT_TRUE(chk.passed) << chk.name << ": " << chk.detail;
}

TEST(Diagnostics, SolitaryGridResolvesThinVortex) {
  const double g = std::pow(200.0, -1.5);
  const auto c = make(-g, g);  // vortex height ~ 1e-4 of the depth
  const double yc = crest_critical_height(c.model, c.eig, c.flow);
  EXPECT_GT(yc, 0.0);
  EXPECT_LT(yc, 1e-2);
  SolitaryGrid sg;
  sg.nx = 301;
  sg.x1_max = 20.0;
  const auto f = solitary_field(c.model, c.eig, c.flow, sg);
  EXPECT_GE(f.grid.dy() * sg.min_vortex_rows, std::min(yc, f.grid.h * 8 / 4096.0) * 0.999);
  EXPECT_EQ(f.grid.x[150], 0.0);
}

TEST(Diagnostics, TagsToString) {
  EXPECT_EQ(to_string(StagnationType::Center), "center");
  EXPECT_EQ(to_string(StagnationType::Saddle), "saddle");
  EXPECT_EQ(to_string(StreamlineTag::SurfaceDiffeomorphic), "surface-diffeomorphic");
}
