#include "catseye/flattened.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "catseye/error.hpp"
#include "catseye/flow_force.hpp"
#include "xops.hpp"

namespace catseye {

namespace {

using detail::XOps;

struct ColumnGeometry {
  double e, ex, exx, q, r;
};

std::vector<ColumnGeometry> column_geometry(const WaveField& f, const XOps& xo) {
  std::vector<ColumnGeometry> g(f.grid.nx());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double e = f.eta_bar[i];
    if (!(e > 0.0)) throw SolverError("surface touched the bottom (eta_bar <= 0)");
    const double ex = xo.apply(i, 1, [&](std::size_t c) { return f.eta_bar[c]; });
    const double exx = xo.apply(i, 2, [&](std::size_t c) { return f.eta_bar[c]; });
    g[i] = {e, ex, exx, ex / e, exx / e};
  }
  return g;
}

// Stencils act on the deviation from the laminar profile u(y); u's own
// derivatives are added exactly. The stencils reproduce quadratics, so this
// only removes rounding amplified by 1/dy^2.
double deviation(const WaveField& f, std::size_t i, std::size_t j) {
  return f.phi(i, j) - f.flow.stream(f.grid.y(j));
}

double apply_y_dev(const Stencil& s, const WaveField& f, std::size_t i) {
  double acc = 0.0;
  for (std::size_t n = 0; n < s.weight.size(); ++n) {
    acc += s.weight[n] * deviation(f, i, static_cast<std::size_t>(s.first) + n);
  }
  return acc;
}

double apply_y1(const Stencil& s, const WaveField& f, std::size_t i, std::size_t j) {
  return apply_y_dev(s, f, i) + f.grid.y(j) + f.flow.s;
}

double apply_y2(const Stencil& s, const WaveField& f, std::size_t i) {
  return apply_y_dev(s, f, i) + 1.0;
}

double apply_xx(const XOps& xo, const WaveField& f, std::size_t i, std::size_t j) {
  return xo.apply(i, 2, [&](std::size_t c) { return deviation(f, c, j); });
}

double apply_x(const XOps& xo, const WaveField& f, std::size_t i, std::size_t j) {
  return xo.apply(i, 1, [&](std::size_t c) { return deviation(f, c, j); });
}

double apply_xy(const XOps& xo, const Stencil& sy, const WaveField& f, std::size_t i) {
  return xo.apply(i, 1, [&](std::size_t c) { return apply_y_dev(sy, f, c); });
}

struct Ops {
  XOps x;
  LineStencils y;
  Ops(const StripGrid& g, const Discretization& d)
      : x(g, d.x_order), y(LineStencils::uniform(g.rows(), g.dy(), d.y_order)) {}
};

double interior_residual(const WaveField& f, const Ops& ops, const ColumnGeometry& g,
                         std::size_t i, std::size_t j) {
  const double y = f.grid.y(j);
  const double h = f.grid.h;
  const double pxx = apply_xx(ops.x, f, i, j);
  const double pxy = apply_xy(ops.x, ops.y.d1[j], f, i);
  const double py = apply_y1(ops.y.d1[j], f, i, j);
  const double pyy = apply_y2(ops.y.d2[j], f, i);
  return pxx - 2.0 * y * g.q * pxy + (y * y * g.q * g.q + h * h / (g.e * g.e)) * pyy +
         y * (2.0 * g.q * g.q - g.r) * py - 1.0;
}

double bernoulli_residual(const WaveField& f, const Ops& ops, const ColumnGeometry& g,
                          std::size_t i) {
  const double h = f.grid.h;
  const double py = apply_y1(ops.y.d1[f.grid.ny], f, i, f.grid.ny);
  return py * py -
         g.e * g.e * (f.flow.Rbar - 2.0 * f.flow.gamma * g.e) / (h * h * (1.0 + g.ex * g.ex));
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Even-symmetric half-domain unknowns: columns k = |i - nx/2| = 0..nx/2,
// interior rows of hat_phi followed by eta_bar.
class HalfDomain {
 public:
  explicit HalfDomain(const StripGrid& g)
      : nx_(g.nx()), half_(g.nx() / 2), ny_(g.ny), cols_(half_ + 1) {}

  std::size_t size() const { return cols_ * ny_; }
  std::size_t fold(std::size_t i) const {
    return i >= half_ ? i - half_ : half_ - i;
  }
  std::size_t column_of(std::size_t k) const { return (half_ + k) % nx_; }
  std::size_t phi_index(std::size_t k, std::size_t j) const { return k * (ny_ - 1) + (j - 1); }
  std::size_t eta_index(std::size_t k) const { return cols_ * (ny_ - 1) + k; }
  std::size_t cols() const { return cols_; }

  Eigen::VectorXd pack(const WaveField& f) const {
    Eigen::VectorXd z(size());
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::size_t i = column_of(k);
      for (std::size_t j = 1; j < ny_; ++j) z[phi_index(k, j)] = f.phi(i, j);
      z[eta_index(k)] = f.eta_bar[i];
    }
    return z;
  }

  void unpack(const Eigen::VectorXd& z, WaveField& f) const {
    for (std::size_t i = 0; i < nx_; ++i) {
      const std::size_t k = fold(i);
      f.phi(i, 0) = 0.0;
      for (std::size_t j = 1; j < ny_; ++j) f.phi(i, j) = z[phi_index(k, j)];
      f.phi(i, ny_) = 1.0;
      f.eta_bar[i] = z[eta_index(k)];
    }
  }

 private:
  std::size_t nx_, half_, ny_, cols_;
};

Eigen::VectorXd half_residual(const WaveField& f, const Ops& ops, const HalfDomain& dom) {
  const auto geo = column_geometry(f, ops.x);
  Eigen::VectorXd r(dom.size());
  for (std::size_t k = 0; k < dom.cols(); ++k) {
    const std::size_t i = dom.column_of(k);
    for (std::size_t j = 1; j < f.grid.ny; ++j) r[dom.phi_index(k, j)] = interior_residual(f, ops, geo[i], i, j);
    r[dom.eta_index(k)] = bernoulli_residual(f, ops, geo[i], i);
  }
  return r;
}

Eigen::SparseMatrix<double> half_jacobian(const WaveField& f, const Ops& ops,
                                          const HalfDomain& dom) {
  const auto geo = column_geometry(f, ops.x);
  const std::size_t ny = f.grid.ny;
  const double h = f.grid.h;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(dom.size() * 64);

  auto add_phi = [&](std::size_t row, std::size_t col, std::size_t j, double w) {
    if (j == 0 || j == ny || w == 0.0) return;  // Dirichlet rows are not unknowns
    trip.emplace_back(static_cast<int>(row), static_cast<int>(dom.phi_index(dom.fold(col), j)), w);
  };
  auto add_eta = [&](std::size_t row, std::size_t col, double w) {
    if (w == 0.0) return;
    trip.emplace_back(static_cast<int>(row), static_cast<int>(dom.eta_index(dom.fold(col))), w);
  };

  for (std::size_t k = 0; k < dom.cols(); ++k) {
    const std::size_t i = dom.column_of(k);
    const ColumnGeometry& g = geo[i];
    for (std::size_t j = 1; j < ny; ++j) {
      const std::size_t row = dom.phi_index(k, j);
      const double y = f.grid.y(j);
      const Stencil& sy1 = ops.y.d1[j];
      const Stencil& sy2 = ops.y.d2[j];
      const double cxy = -2.0 * y * g.q;
      const double cyy = y * y * g.q * g.q + h * h / (g.e * g.e);
      const double cy = y * (2.0 * g.q * g.q - g.r);

      ops.x.for_each(i, 2, [&](std::size_t c, double w) { add_phi(row, c, j, w); });
      ops.x.for_each(i, 1, [&](std::size_t c, double wx) {
        for (std::size_t n = 0; n < sy1.weight.size(); ++n) {
          add_phi(row, c, static_cast<std::size_t>(sy1.first) + n, cxy * wx * sy1.weight[n]);
        }
      });
      for (std::size_t n = 0; n < sy2.weight.size(); ++n) {
        add_phi(row, i, static_cast<std::size_t>(sy2.first) + n, cyy * sy2.weight[n]);
      }
      for (std::size_t n = 0; n < sy1.weight.size(); ++n) {
        add_phi(row, i, static_cast<std::size_t>(sy1.first) + n, cy * sy1.weight[n]);
      }

      // Dependence on eta_bar through q = e_x / e, r = e_xx / e and h^2 / e^2.
      const double pxy = apply_xy(ops.x, sy1, f, i);
      const double py = apply_y1(sy1, f, i, j);
      const double pyy = apply_y2(sy2, f, i);
      const double dF_dq = -2.0 * y * pxy + 2.0 * y * y * g.q * pyy + 4.0 * y * g.q * py;
      const double dF_dr = -y * py;
      ops.x.for_each(i, 1, [&](std::size_t c, double w) { add_eta(row, c, dF_dq * w / g.e); });
      ops.x.for_each(i, 2, [&](std::size_t c, double w) { add_eta(row, c, dF_dr * w / g.e); });
      add_eta(row, i,
              -dF_dq * g.q / g.e - dF_dr * g.r / g.e - 2.0 * h * h / (g.e * g.e * g.e) * pyy);
    }

    // Bernoulli row.
    const std::size_t row = dom.eta_index(k);
    const Stencil& top = ops.y.d1[ny];
    const double py = apply_y1(top, f, i, ny);
    for (std::size_t n = 0; n < top.weight.size(); ++n) {
      add_phi(row, i, static_cast<std::size_t>(top.first) + n, 2.0 * py * top.weight[n]);
    }
    const double R = f.flow.Rbar;
    const double gam = f.flow.gamma;
    const double den = h * h * (1.0 + g.ex * g.ex);
    add_eta(row, i, -(2.0 * g.e * R - 6.0 * gam * g.e * g.e) / den);
    const double dG_dex = -g.e * g.e * (R - 2.0 * gam * g.e) * 2.0 * g.ex / (den * (1.0 + g.ex * g.ex));
    ops.x.for_each(i, 1, [&](std::size_t c, double w) { add_eta(row, c, -dG_dex * w); });
  }

  Eigen::SparseMatrix<double> J(static_cast<Eigen::Index>(dom.size()),
                                static_cast<Eigen::Index>(dom.size()));
  J.setFromTriplets(trip.begin(), trip.end());
  return J;
}

using SparseSolver = Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>;

// Hager's estimate of ||J^-1||_1, times ||J||_1.
double condition_estimate(const Eigen::SparseMatrix<double>& J, SparseSolver& lu) {
  const Eigen::Index n = J.rows();
  double norm_j = 0.0;
  for (Eigen::Index c = 0; c < J.outerSize(); ++c) {
    double col = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(J, c); it; ++it) col += std::abs(it.value());
    norm_j = std::max(norm_j, col);
  }
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double est = 0.0;
  for (int pass = 0; pass < 5; ++pass) {
    const Eigen::VectorXd y = lu.solve(x);
    est = y.lpNorm<1>();
    Eigen::VectorXd xi = y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
    const Eigen::VectorXd z = lu.transpose().solve(xi);
    Eigen::Index jmax = 0;
    const double zmax = z.cwiseAbs().maxCoeff(&jmax);
    if (zmax <= z.dot(x)) break;
    x.setZero();
    x[jmax] = 1.0;
  }
  return est * norm_j;
}

void symmetrize(WaveField& f) {
  const std::size_t n = f.grid.nx();
  const std::size_t half = n / 2;
  for (std::size_t k = 1; k < half; ++k) {
    const std::size_t a = half + k;
    const std::size_t b = half - k;
    const double e = 0.5 * (f.eta_bar[a] + f.eta_bar[b]);
    f.eta_bar[a] = f.eta_bar[b] = e;
    for (std::size_t j = 0; j < f.grid.rows(); ++j) {
      const double p = 0.5 * (f.phi(a, j) + f.phi(b, j));
      f.phi(a, j) = f.phi(b, j) = p;
    }
  }
}

}  // namespace

FlattenedResidual flattened_residual(const WaveField& field, const Discretization& disc) {
  const Ops ops(field.grid, disc);
  const auto geo = column_geometry(field, ops.x);
  const std::size_t nx = field.grid.nx();
  const std::size_t ny = field.grid.ny;
  FlattenedResidual r;
  r.interior.resize(nx * (ny - 1));
  r.bernoulli.resize(nx);
  r.dirichlet.resize(2 * nx);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 1; j < ny; ++j) r.interior[i * (ny - 1) + j - 1] = interior_residual(field, ops, geo[i], i, j);
    r.bernoulli[i] = bernoulli_residual(field, ops, geo[i], i);
    r.dirichlet[2 * i] = std::abs(field.phi(i, 0));
    r.dirichlet[2 * i + 1] = std::abs(field.phi(i, ny) - 1.0);
  }
  return r;
}

ResidualReport residual_report(const WaveField& field, const Discretization& disc) {
  const auto r = flattened_residual(field, disc);
  ResidualReport rep;
  rep.pde_res = max_abs(r.interior);
  rep.bern_res = max_abs(r.bernoulli);
  rep.dirichlet_res = max_abs(r.dirichlet);
  rep.flowforce_var = flow_force_variation(flow_force_scaled(field, disc));
  rep.nx = field.grid.nx();
  rep.ny = field.grid.ny;
  rep.x_order = disc.x_order;
  rep.y_order = disc.y_order;
  return rep;
}

NewtonResult solve_flattened_periodic(const LaminarFlow& flow, const WaveField& init,
                                      const NewtonOptions& options) {
  const StripGrid& grid = init.grid;
  if (!grid.periodic) throw RangeError("solve_flattened_periodic needs a periodic grid");
  if (grid.nx() < 16 || grid.ny < 16 || grid.nx() % 2 != 0) throw RangeError("degenerate grid");
  if (std::abs(grid.h - flow.h) > 1e-12 * flow.h) throw RangeError("grid depth differs from h(s)");

  WaveField f = init;
  f.flow = flow;
  symmetrize(f);
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    f.phi(i, 0) = 0.0;
    f.phi(i, grid.ny) = 1.0;
  }
  const Ops ops(grid, options.disc);
  const HalfDomain dom(grid);

  Eigen::VectorXd z = dom.pack(f);
  Eigen::VectorXd r = half_residual(f, ops, dom);
  double norm = r.lpNorm<Eigen::Infinity>();

  ResidualReport progress;
  progress.history.push_back(norm);
  SparseSolver lu;
  bool pattern_ready = false;
  std::size_t it = 0;
  for (; it < options.max_iter && norm > options.tol; ++it) {
    const Eigen::SparseMatrix<double> J = half_jacobian(f, ops, dom);
    if (!pattern_ready) {
      lu.analyzePattern(J);
      pattern_ready = true;
    }
    lu.factorize(J);
    if (lu.info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "singular Jacobian at Newton iteration " << it << ": " << lu.lastErrorMessage();
      throw SolverError(msg.str());
    }
    progress.cond_estimate = condition_estimate(J, lu);
    const Eigen::VectorXd dz = lu.solve(-r);
    if (lu.info() != Eigen::Success || !dz.allFinite()) throw SolverError("Newton linear solve failed");

    double lambda = 1.0;
    bool accepted = false;
    for (std::size_t halving = 0; halving <= options.max_halvings; ++halving, lambda *= 0.5) {
      const Eigen::VectorXd trial = z + lambda * dz;
      WaveField ft = f;
      dom.unpack(trial, ft);
      try {
        const Eigen::VectorXd rt = half_residual(ft, ops, dom);
        const double nt = rt.lpNorm<Eigen::Infinity>();
        if (std::isfinite(nt) && nt < norm) {
          z = trial;
          f = std::move(ft);
          r = rt;
          norm = nt;
          accepted = true;
          break;
        }
      } catch (const SolverError&) {
        // eta_bar left (0, inf); shorten the step.
      }
    }
    progress.history.push_back(norm);
    if (!accepted) {
      // Rounding floor: nothing left to gain.
      if (norm < 1e3 * options.tol) break;
      std::ostringstream msg;
      msg << "out of basin: Newton line search failed at iteration " << it
          << " (residual " << norm << ")";
      throw SolverError(msg.str());
    }
  }
  if (norm > options.tol && norm >= 1e3 * options.tol) {
    std::ostringstream msg;
    msg << "out of basin: no convergence after " << it << " Newton iterations (residual " << norm
        << ")";
    throw SolverError(msg.str());
  }

  NewtonResult out;
  out.field = std::move(f);
  out.report = residual_report(out.field, options.disc);
  out.report.iterations = it;
  out.report.history = std::move(progress.history);
  out.report.cond_estimate = progress.cond_estimate;
  out.report.converged = true;
  return out;
}

FieldDerivatives field_derivatives(const WaveField& field, const Discretization& disc) {
  const Ops ops(field.grid, disc);
  const std::size_t nx = field.grid.nx();
  const std::size_t rows = field.grid.rows();
  FieldDerivatives d;
  d.px.resize(nx * rows);
  d.py.resize(nx * rows);
  d.pxx.resize(nx * rows);
  d.pxy.resize(nx * rows);
  d.pyy.resize(nx * rows);
  d.ex.resize(nx);
  d.exx.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    d.ex[i] = ops.x.apply(i, 1, [&](std::size_t c) { return field.eta_bar[c]; });
    d.exx[i] = ops.x.apply(i, 2, [&](std::size_t c) { return field.eta_bar[c]; });
    for (std::size_t j = 0; j < rows; ++j) {
      const std::size_t n = i * rows + j;
      d.px[n] = apply_x(ops.x, field, i, j);
      d.pxx[n] = apply_xx(ops.x, field, i, j);
      d.py[n] = apply_y1(ops.y.d1[j], field, i, j);
      d.pyy[n] = apply_y2(ops.y.d2[j], field, i);
      d.pxy[n] = apply_xy(ops.x, ops.y.d1[j], field, i);
    }
  }
  return d;
}

}  // namespace catseye
