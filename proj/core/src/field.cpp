#include "catseye/field.hpp"

#include <cmath>

#include "catseye/error.hpp"

namespace catseye {

StripGrid StripGrid::periodic_grid(double period, std::size_t nx, std::size_t ny, double h) {
  if (nx < 16 || ny < 16) throw RangeError("degenerate grid: need at least 16 x 16 nodes");
  if (nx % 2 != 0) throw RangeError("periodic grids need an even column count");
  if (!(period > 0.0)) throw RangeError("period must be positive");
  StripGrid g;
  g.ny = ny;
  g.h = h;
  g.periodic = true;
  g.period = period;
  g.x.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    g.x[i] = -0.5 * period + period * static_cast<double>(i) / static_cast<double>(nx);
  }
  g.x[nx / 2] = 0.0;
  return g;
}

StripGrid StripGrid::uniform(double x_min, double x_max, std::size_t nx, std::size_t ny,
                             double h) {
  if (nx < 16 || ny < 16) throw RangeError("degenerate grid: need at least 16 x 16 nodes");
  if (!(x_max > x_min)) throw RangeError("degenerate grid: empty x range");
  StripGrid g;
  g.ny = ny;
  g.h = h;
  g.x.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    g.x[i] = x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(nx - 1);
  }
  return g;
}

WaveField WaveField::laminar(const StripGrid& grid, const LaminarFlow& flow) {
  WaveField f;
  f.grid = grid;
  f.flow = flow;
  f.hat_phi.resize(grid.nx() * grid.rows());
  f.eta_bar.assign(grid.nx(), flow.h);
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    for (std::size_t j = 0; j < grid.rows(); ++j) f.phi(i, j) = flow.stream(grid.y(j));
    f.phi(i, grid.ny) = 1.0;
  }
  return f;
}

PhysicalField to_physical(const WaveField& field, double b) {
  if (!(b > 0.0)) throw RangeError("b must be positive");
  const double sb = std::sqrt(b);
  PhysicalField p;
  p.b = b;
  p.nx = field.grid.nx();
  p.rows = field.grid.rows();
  p.X.resize(p.nx);
  p.eta.resize(p.nx);
  p.Y.resize(p.nx * p.rows);
  p.psi = field.hat_phi;
  for (std::size_t i = 0; i < p.nx; ++i) {
    p.X[i] = field.grid.x[i] / sb;
    p.eta[i] = field.eta_bar[i] / sb;
    const double stretch = field.eta_bar[i] / field.grid.h;
    for (std::size_t j = 0; j < p.rows; ++j) p.Y[i * p.rows + j] = field.grid.y(j) * stretch / sb;
  }
  return p;
}

double strip_height(const WaveField& field, std::size_t column, double b, double Y) {
  return std::sqrt(b) * Y * field.grid.h / field.eta_bar[column];
}

}  // namespace catseye
