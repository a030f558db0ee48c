#pragma once

// Manufactured flattened-problem solution with its closed-form continuum
// residuals, used to measure the truncation order of the discrete operators.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "catseye/flattened.hpp"

namespace manufactured {

using namespace catseye;

// Smooth test field P = u(y) + a cos(kx) g(y) under e(x) = h + c cos(kx); the
// continuum residual of the flattened system is evaluated from the closed form.
struct Manufactured {
  LaminarFlow flow;
  double a = 0.02, c = 0.03, k = 1.0;
  bool quadratic = false;  // g = y^2 instead of sin(y)

  double g(double y) const { return quadratic ? y * y : std::sin(y); }
  double gy(double y) const { return quadratic ? 2 * y : std::cos(y); }
  double gyy(double y) const { return quadratic ? 2.0 : -std::sin(y); }

  WaveField field(std::size_t nx, std::size_t ny, double period) const {
    StripGrid grid;
    grid.ny = ny;
    grid.h = flow.h;
    grid.periodic = true;
    grid.period = period;
    for (std::size_t i = 0; i < nx; ++i) grid.x.push_back(-0.5 * period + period * i / nx);
    WaveField f;
    f.grid = grid;
    f.flow = flow;
    f.hat_phi.resize(nx * grid.rows());
    f.eta_bar.resize(nx);
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = grid.x[i];
      f.eta_bar[i] = flow.h + c * std::cos(k * x);
      for (std::size_t j = 0; j < grid.rows(); ++j) {
        const double y = grid.y(j);
        f.phi(i, j) = flow.stream(y) + a * std::cos(k * x) * g(y);
      }
    }
    return f;
  }

  double interior(double x, double y) const {
    const double h = flow.h;
    const double e = h + c * std::cos(k * x), ex = -c * k * std::sin(k * x), exx = -c * k * k * std::cos(k * x);
    const double q = ex / e, r = exx / e;
    const double px = -a * k * std::sin(k * x) * g(y);
    const double pxx = -a * k * k * std::cos(k * x) * g(y);
    const double pxy = -a * k * std::sin(k * x) * gy(y);
    const double py = y + flow.s + a * std::cos(k * x) * gy(y);
    const double pyy = 1.0 + a * std::cos(k * x) * gyy(y);
    (void)px;
    return pxx - 2 * y * q * pxy + (y * y * q * q + h * h / (e * e)) * pyy + y * (2 * q * q - r) * py - 1.0;
  }

  double bernoulli(double x) const {
    const double h = flow.h;
    const double e = h + c * std::cos(k * x), ex = -c * k * std::sin(k * x);
    const double py = h + flow.s + a * std::cos(k * x) * gy(h);
    return py * py - e * e * (flow.Rbar - 2 * flow.gamma * e) / (h * h * (1 + ex * ex));
  }
};

inline std::pair<double, double> truncation(const Manufactured& m, std::size_t nx, std::size_t ny,
                                     const Discretization& disc) {
  const double period = 2 * std::numbers::pi / m.k;
  const auto f = m.field(nx, ny, period);
  const auto r = flattened_residual(f, disc);
  double ei = 0, eb = 0;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 1; j < ny; ++j) {
      ei = std::max(ei, std::abs(r.interior[i * (ny - 1) + j - 1] - m.interior(f.grid.x[i], f.grid.y(j))));
    }
    eb = std::max(eb, std::abs(r.bernoulli[i] - m.bernoulli(f.grid.x[i])));
  }
  return {ei, eb};
}

}  // namespace manufactured
