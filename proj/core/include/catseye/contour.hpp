#pragma once

#include <cstddef>
#include <vector>

namespace catseye {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Polyline {
  std::vector<Point> points;
  bool closed = false;
};

/// Scalar samples on a rectilinear grid, value(i, j) = values[i * ny + j].
/// With `periodic`, the strip between the last and first columns is also
/// contoured; its far edge sits at x.back() + (x[1] - x[0]).
struct GridScalar {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> values;
  bool periodic = false;

  double value(std::size_t i, std::size_t j) const { return values[i * y.size() + j]; }
};

struct ContourResult {
  std::vector<Polyline> lines;
  std::size_t ambiguous_cells = 0;  ///< saddle cells resolved by the centre value
  std::size_t flat_cells = 0;       ///< cells with every corner exactly on the level
};

/// Level set {value = level} by marching squares with linear edge
/// interpolation; segments are stitched into maximal polylines.
ContourResult contour(const GridScalar& field, double level);

/// Even-odd point-in-polygon test (polygon taken as closed).
bool encloses(const Polyline& loop, Point p);

}  // namespace catseye
