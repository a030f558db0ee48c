#include <gtest/gtest.h>

#include <cmath>

#include "catseye/error.hpp"
#include "catseye/flow_force.hpp"
#include "catseye/reconstruct.hpp"
#include "oracles.hpp"

using namespace catseye;

namespace {

struct Solved {
  LaminarFlow flow;
  WaveField init;
  NewtonResult coarse;
  NewtonResult fine;
};

const Solved& solved() {
  static const Solved s = [] {
    Solved out;
    out.flow = stream_solution(-0.06, 0.025);
    const auto eig = compute_spectrum(out.flow);
    const auto model = build_model(eig);
    out.init = periodic_field(0.5 * model.L, model, eig, out.flow, 256, 48);
    out.coarse = solve_flattened_periodic(out.flow, out.init);
    out.fine = solve_flattened_periodic(out.flow, periodic_field(0.5 * model.L, model, eig, out.flow, 256, 96));
    return out;
  }();
  return s;
}

}  // namespace

TEST(FlowForce, LaminarConstantAndValue) {
  const auto flow = stream_solution(-0.08, 0.02);
  const auto f = WaveField::laminar(StripGrid::periodic_grid(30, 64, 40, flow.h), flow);
  const auto S = flow_force_scaled(f);
  EXPECT_LT(flow_force_variation(S), 1e-14);
  const double integral = oracle::simpson([&](double y) {
    const double uy = y + flow.s;
    return 0.5 * uy * uy + flow.stream(y);
  }, 0.0, flow.h, 400);
  const double expected = (0.5 * flow.Rbar - 1.0) * flow.h - 0.5 * flow.gamma * flow.h * flow.h + integral;
  EXPECT_NEAR(S[0], expected, 1e-13);
}

TEST(FlowForce, PhysicalScaling) {
  const auto flow = stream_solution(-0.05, 0.01);
  const auto f = WaveField::laminar(StripGrid::periodic_grid(30, 64, 40, flow.h), flow);
  const double b = std::pow(flow.gamma, -2.0 / 3.0);
  const double X = f.grid.x[10] / std::sqrt(b);
  EXPECT_NEAR(flow_force(f, b, X), std::sqrt(b) * flow_force_scaled(f)[10], 1e-12);
  EXPECT_THROW(flow_force(f, b, X + 0.3 * f.grid.dx() / std::sqrt(b)), RangeError);
}

TEST(FlowForce, ConvergedSolutionIsInvariant) {
  const auto& s = solved();
  const double coarse = flow_force_variation(flow_force_scaled(s.coarse.field));
  const double fine = flow_force_variation(flow_force_scaled(s.fine.field));
  RecordProperty("variation_48", std::to_string(coarse));
  RecordProperty("variation_96", std::to_string(fine));
  EXPECT_LT(fine, 1e-6);
  EXPECT_LT(fine, 0.5 * coarse);  // tightens under refinement
  EXPECT_NEAR(fine, s.fine.report.flowforce_var, 1e-15);
}

TEST(FlowForce, LeadingOrderFieldVariesSlightly) {
  const auto& s = solved();
  const double v = flow_force_variation(flow_force_scaled(s.init));
  EXPECT_GT(v, 1e-8);
  EXPECT_LT(v, 1e-3);
  EXPECT_GT(v, 10.0 * flow_force_variation(flow_force_scaled(s.coarse.field)));
}

TEST(FlowForce, PrintedGroupingIsNotInvariant) {
  // Same quantities with a factor 1/2 on the whole integral.
  const auto& s = solved();
  const auto& f = s.fine.field;
  const auto d = field_derivatives(f);
  const std::size_t rows = f.grid.rows();
  std::vector<double> alt(f.grid.nx());
  for (std::size_t i = 0; i < alt.size(); ++i) {
    const double e = f.eta_bar[i];
    const double q = d.ex[i] / e;
    const double integral = oracle::simpson([&](double yy) {
      const auto j = static_cast<std::size_t>(std::lround(yy / f.grid.dy()));
      const std::size_t n = i * rows + j;
      const double vy = f.grid.h / e * d.py[n];
      const double vx = d.px[n] - f.grid.y(j) * q * d.py[n];
      return 0.5 * (vy * vy - vx * vx) + f.phi(i, j);
    }, 0.0, f.grid.h, static_cast<int>(f.grid.ny));
    alt[i] = (0.5 * f.flow.Rbar - 1.0) * e - 0.5 * f.flow.gamma * e * e + 0.5 * e / f.grid.h * integral;
  }
  const double derived = flow_force_variation(flow_force_scaled(f));
  EXPECT_GT(flow_force_variation(alt), 100.0 * derived);
}
