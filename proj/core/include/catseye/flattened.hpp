#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "catseye/field.hpp"
#include "catseye/laminar.hpp"

namespace catseye {

/// Discretization of the flattened free-boundary problem on a periodic strip:
/// centred finite differences of order `x_order` along x and `y_order` along y.
struct Discretization {
  int x_order = 8;
  int y_order = 2;
};

/// Pointwise residuals of the flattened system for a field on a periodic grid.
struct FlattenedResidual {
  std::vector<double> interior;   ///< rows 1..ny-1, column-major (nx * (ny - 1))
  std::vector<double> bernoulli;  ///< one per column
  std::vector<double> dirichlet;  ///< |phi(x,0)| and |phi(x,h) - 1|, two per column
};

FlattenedResidual flattened_residual(const WaveField& field, const Discretization& disc = {});

struct ResidualReport {
  double pde_res = 0.0;        ///< max interior residual
  double bern_res = 0.0;       ///< max Bernoulli residual
  double dirichlet_res = 0.0;  ///< max Dirichlet row residual
  double flowforce_var = 0.0;  ///< max_X |S - mean S| / |mean S|
  std::size_t nx = 0;
  std::size_t ny = 0;
  int x_order = 0;
  int y_order = 0;
  std::size_t iterations = 0;
  std::vector<double> history;  ///< max(pde_res, bern_res) before each iteration and at exit
  double cond_estimate = 0.0;   ///< 1-norm condition estimate of the last Jacobian
  bool converged = false;
};

ResidualReport residual_report(const WaveField& field, const Discretization& disc = {});

struct NewtonOptions {
  double tol = 1e-11;
  std::size_t max_iter = 40;
  std::size_t max_halvings = 12;
  Discretization disc;
};

struct NewtonResult {
  WaveField field;
  ResidualReport report;
};

/// Newton solve of the flattened system with Bernoulli constant flow.Rbar,
/// restricted to fields even about x = 0 (the crest column). `init` must live
/// on a periodic grid whose period is the target wavelength; it is
/// symmetrized before iterating. Throws SolverError("out of basin") when the
/// iteration stalls and SolverError when the Jacobian is singular.
NewtonResult solve_flattened_periodic(const LaminarFlow& flow, const WaveField& init,
                                      const NewtonOptions& options = {});

/// Gradient of hat_phi on the grid using the discretization's stencils.
struct FieldDerivatives {
  std::vector<double> px, py, pxx, pxy, pyy;  ///< same layout as hat_phi
  std::vector<double> ex, exx;                ///< per column
};

FieldDerivatives field_derivatives(const WaveField& field, const Discretization& disc = {});

}  // namespace catseye
