#include "catseye/stencil.hpp"

#include <algorithm>

#include "catseye/error.hpp"

namespace catseye {

std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes,
                                            std::size_t max_order) {
  const std::size_t n = nodes.size();
  std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
  if (n == 0) return c;
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

Stencil make_stencil(std::size_t node, std::size_t rows, std::size_t width, double d,
                     std::size_t deriv) {
  const long half = static_cast<long>(width / 2);
  long first = static_cast<long>(node) - half;
  first = std::clamp(first, 0L, static_cast<long>(rows) - static_cast<long>(width));
  std::vector<double> pts(width);
  for (std::size_t k = 0; k < width; ++k) pts[k] = static_cast<double>(first + static_cast<long>(k)) * d;
  const auto w = fd_weights(static_cast<double>(node) * d, pts, deriv);
  return {first, w[deriv]};
}

}  // namespace

LineStencils LineStencils::uniform(std::size_t rows, double d, int order) {
  if (order < 2 || order % 2 != 0) throw RangeError("stencil order must be even and >= 2");
  const std::size_t central = static_cast<std::size_t>(order) + 1;
  if (rows < central + 1) throw RangeError("too few rows for the requested stencil order");
  LineStencils s;
  for (std::size_t j = 0; j < rows; ++j) {
    const bool interior = j >= central / 2 && j + central / 2 < rows;
    // One-sided second derivatives need an extra node to keep the order.
    s.d1.push_back(make_stencil(j, rows, central, d, 1));
    s.d2.push_back(make_stencil(j, rows, interior ? central : central + 1, d, 2));
  }
  return s;
}

PeriodicStencils PeriodicStencils::centred(double d, long half) {
  std::vector<double> pts;
  for (long m = -half; m <= half; ++m) pts.push_back(static_cast<double>(m) * d);
  const auto w = fd_weights(0.0, pts, 2);
  return {half, w[1], w[2]};
}

}  // namespace catseye
