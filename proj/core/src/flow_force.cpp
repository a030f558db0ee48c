#include "catseye/flow_force.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "catseye/error.hpp"

namespace catseye {

namespace {

// Composite Simpson on an even number of intervals, trapezoid otherwise.
double integrate_rows(const std::vector<double>& f, double dy) {
  const std::size_t n = f.size() - 1;
  if (n % 2 != 0) {
    double acc = 0.5 * (f.front() + f.back());
    for (std::size_t j = 1; j < n; ++j) acc += f[j];
    return acc * dy;
  }
  double acc = f.front() + f.back();
  for (std::size_t j = 1; j < n; ++j) acc += (j % 2 == 1 ? 4.0 : 2.0) * f[j];
  return acc * dy / 3.0;
}

}  // namespace

std::vector<double> flow_force_scaled(const WaveField& field, const Discretization& disc) {
  const auto d = field_derivatives(field, disc);
  const std::size_t nx = field.grid.nx();
  const std::size_t rows = field.grid.rows();
  const double h = field.grid.h;
  const double R = field.flow.Rbar;
  const double g = field.flow.gamma;
  std::vector<double> out(nx);
  std::vector<double> integrand(rows);
  for (std::size_t i = 0; i < nx; ++i) {
    const double e = field.eta_bar[i];
    const double q = d.ex[i] / e;
    for (std::size_t j = 0; j < rows; ++j) {
      const std::size_t n = i * rows + j;
      const double y = field.grid.y(j);
      const double vy = h / e * d.py[n];
      const double vx = d.px[n] - y * q * d.py[n];
      integrand[j] = 0.5 * (vy * vy - vx * vx) + field.phi(i, j);
    }
    out[i] = (0.5 * R - 1.0) * e - 0.5 * g * e * e + e / h * integrate_rows(integrand, field.grid.dy());
  }
  return out;
}

double flow_force(const WaveField& field, double b, double X, const Discretization& disc) {
  if (!(b > 0.0)) throw RangeError("b must be positive");
  const double x = std::sqrt(b) * X;
  const auto& xs = field.grid.x;
  const auto it = std::min_element(xs.begin(), xs.end(), [x](double a, double c) {
    return std::abs(a - x) < std::abs(c - x);
  });
  const double tol = 1e-9 * std::max(1.0, std::abs(field.grid.dx()));
  if (it == xs.end() || std::abs(*it - x) > tol) throw RangeError("X is not a grid column");
  // Cheap enough for diagnostics; whole trace is computed.
  const auto trace = flow_force_scaled(field, disc);
  return std::sqrt(b) * trace[static_cast<std::size_t>(it - xs.begin())];
}

double flow_force_variation(const std::vector<double>& trace) {
  if (trace.empty()) return 0.0;
  const double mean = std::accumulate(trace.begin(), trace.end(), 0.0) / static_cast<double>(trace.size());
  double dev = 0.0;
  for (double s : trace) dev = std::max(dev, std::abs(s - mean));
  return mean != 0.0 ? dev / std::abs(mean) : dev;
}

}  // namespace catseye
