#pragma once

#include <cstddef>
#include <vector>

#include "catseye/laminar.hpp"

namespace catseye {

/// Structured grid on the flattened strip R x [0, h]: arbitrary increasing
/// column positions x_i and uniform rows y_j = j h / ny, j = 0..ny.
struct StripGrid {
  std::vector<double> x;
  std::size_t ny = 0;
  double h = 0.0;
  bool periodic = false;
  double period = 0.0;  ///< only meaningful when periodic

  std::size_t nx() const noexcept { return x.size(); }
  std::size_t rows() const noexcept { return ny + 1; }
  double y(std::size_t j) const noexcept {
    return h * static_cast<double>(j) / static_cast<double>(ny);
  }
  double dy() const noexcept { return h / static_cast<double>(ny); }
  /// Column spacing (grids built here are uniform in x).
  double dx() const noexcept { return x.size() > 1 ? x[1] - x[0] : 0.0; }

  /// x_i = -period/2 + i period / nx, i = 0..nx-1 (crest column at i = nx/2).
  static StripGrid periodic_grid(double period, std::size_t nx, std::size_t ny, double h);
  /// x_i uniform on [x_min, x_max] inclusive.
  static StripGrid uniform(double x_min, double x_max, std::size_t nx, std::size_t ny, double h);
};

/// Stream function on the strip plus the scaled surface elevation.
/// Values are stored column by column: hat_phi[i * rows + j].
struct WaveField {
  StripGrid grid;
  LaminarFlow flow;
  std::vector<double> hat_phi;
  std::vector<double> eta_bar;

  double phi(std::size_t i, std::size_t j) const { return hat_phi[i * grid.rows() + j]; }
  double& phi(std::size_t i, std::size_t j) { return hat_phi[i * grid.rows() + j]; }

  /// Laminar field u(y; s), eta_bar = h on the given grid.
  static WaveField laminar(const StripGrid& grid, const LaminarFlow& flow);
};

/// Unscaled copy: X = x / sqrt(b), Y = (y eta_bar / h) / sqrt(b), psi = hat_phi.
struct PhysicalField {
  double b = 0.0;
  std::size_t nx = 0;
  std::size_t rows = 0;
  std::vector<double> X;  ///< per column
  std::vector<double> Y;  ///< per node, same layout as hat_phi
  std::vector<double> psi;
  std::vector<double> eta;  ///< per column
};

PhysicalField to_physical(const WaveField& field, double b);

/// Strip coordinates of a physical point (X, Y) on column i: x = sqrt(b) X,
/// y = sqrt(b) Y h / eta_bar_i.
double strip_height(const WaveField& field, std::size_t column, double b, double Y);

}  // namespace catseye
