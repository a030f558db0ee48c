#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace catseye {

/// Finite-difference weights for derivatives 0..max_order at `x0` from the
/// nodes (Fornberg's recursion). Result[m][k] weighs node k for derivative m.
std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes,
                                            std::size_t max_order);

/// A stencil on integer offsets: sum_k weight[k] f(first + k).
struct Stencil {
  long first = 0;
  std::vector<double> weight;
};

/// Derivative stencils on a uniform grid of `rows` nodes (spacing `d`) with
/// order of accuracy `order`: centred in the interior, shifted one-sided at
/// the ends. Entry j serves node j.
struct LineStencils {
  std::vector<Stencil> d1;
  std::vector<Stencil> d2;

  static LineStencils uniform(std::size_t rows, double d, int order);
};

/// Centred periodic stencils with half-width `half` (order 2 * half).
struct PeriodicStencils {
  long half = 0;
  std::vector<double> d1;  ///< offsets -half..half
  std::vector<double> d2;

  static PeriodicStencils centred(double d, long half);
};

}  // namespace catseye
