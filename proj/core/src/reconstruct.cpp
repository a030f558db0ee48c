#include "catseye/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "catseye/error.hpp"
#include "catseye/roots.hpp"

namespace catseye {

double surface_displacement(double alpha, const EigenData& eig, const LaminarFlow& flow) {
  return -alpha * eig.centre_mode()(flow.h) / flow.k;
}

std::vector<SurfaceSample> surface_from_orbit(const ReducedOrbit& orbit, const EigenData& eig,
                                              const LaminarFlow& flow) {
  std::vector<SurfaceSample> out;
  out.reserve(orbit.samples.size());
  for (const auto& s : unscale_orbit(orbit, eig.tau)) {
    out.push_back({s.x, flow.h + surface_displacement(s.alpha, eig, flow)});
  }
  return out;
}

std::vector<ProfileSample> physical_profile(const ReducedOrbit& orbit, const EigenData& eig,
                                            const LaminarFlow& flow, double b) {
  const double sb = std::sqrt(b);
  std::vector<ProfileSample> out;
  for (const auto& s : surface_from_orbit(orbit, eig, flow)) out.push_back({s.x / sb, s.eta_bar / sb});
  return out;
}

double solitary_profile_closed_form(double X, const EigenData& eig, const LaminarFlow& flow,
                                    double b, ProfileConstant constant) {
  const double sb = std::sqrt(b);
  const double c0 = constant == ProfileConstant::Leading ? eig.c0_leading : eig.c0_profile;
  const double h_minus = conjugate_flow(flow.s, flow.gamma).h / sb;
  const double sech = 1.0 / std::cosh(0.5 * sb * eig.tau * X);
  return h_minus + 3.0 / (c0 * c0) * eig.tau * eig.tau * sech * sech / sb;
}

namespace {

void fill_column(WaveField& f, std::size_t i, double alpha, const EigenData& eig) {
  const auto& flow = f.flow;
  const auto& phi1 = eig.centre_mode();
  const double zeta = surface_displacement(alpha, eig, flow);
  f.eta_bar[i] = flow.h + zeta;
  const std::size_t ny = f.grid.ny;
  f.phi(i, 0) = 0.0;
  for (std::size_t j = 1; j < ny; ++j) {
    const double y = f.grid.y(j);
    f.phi(i, j) = flow.stream(y) + alpha * phi1(y) + y * (y + flow.s) * zeta / flow.h;
  }
  f.phi(i, ny) = 1.0;
}

}  // namespace

WaveField field_from_orbit(const ReducedOrbit& orbit, const EigenData& eig,
                           const LaminarFlow& flow, std::size_t ny, double period,
                           bool parallel) {
  const auto unscaled = unscale_orbit(orbit, eig.tau);
  if (unscaled.size() < 16 || ny < 16) throw RangeError("degenerate grid: need at least 16 x 16 nodes");
  WaveField f;
  f.flow = flow;
  f.grid.ny = ny;
  f.grid.h = flow.h;
  f.grid.periodic = period > 0.0;
  f.grid.period = period;
  f.grid.x.reserve(unscaled.size());
  for (const auto& s : unscaled) f.grid.x.push_back(s.x);
  f.hat_phi.resize(f.grid.nx() * f.grid.rows());
  f.eta_bar.resize(f.grid.nx());

  const std::size_t nx = f.grid.nx();
  if (!parallel) {
    for (std::size_t i = 0; i < nx; ++i) fill_column(f, i, unscaled[i].alpha, eig);
    return f;
  }
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < nx; i += workers) fill_column(f, i, unscaled[i].alpha, eig);
    });
  }
  return f;
}

double hatphi_y_near_bottom(double alpha, double y, const EigenData& eig, const LaminarFlow& flow) {
  if (y < 0.0 || y > flow.h) throw RangeError("hatphi_y_near_bottom: y outside [0, h]");
  const auto& phi1 = eig.centre_mode();
  const double uy = y + flow.s;
  return uy + alpha * phi1.derivative(y) - (uy + y) * alpha * phi1(flow.h) / (flow.k * flow.h);
}

std::vector<double> bottom_velocity_trace(const ReducedOrbit& orbit, const EigenData& eig,
                                          const LaminarFlow& flow) {
  std::vector<double> out;
  out.reserve(orbit.samples.size());
  for (const auto& s : unscale_orbit(orbit, eig.tau)) out.push_back(hatphi_y_near_bottom(s.alpha, 0.0, eig, flow));
  return out;
}

ReducedOrbit sample_periodic_orbit(double ell, const ReducedModel& model,
                                   std::span<const double> x1, double tol) {
  // Integrate once over the distinct |x1| values, then mirror.
  std::vector<double> positive;
  positive.reserve(x1.size());
  for (double x : x1) positive.push_back(std::abs(x));
  std::sort(positive.begin(), positive.end());
  positive.erase(std::unique(positive.begin(), positive.end()), positive.end());

  IntegrationOptions opts;
  opts.tol = tol;
  opts.sample_x = positive;
  const double x_end = positive.empty() ? 0.0 : positive.back();
  ReducedOrbit half = periodic_orbit(ell, model, opts, x_end);
  if (x_end == 0.0) half.samples.assign(positive.size(), {0.0, half.turning_points.first, 0.0});

  ReducedOrbit out;
  out.kind = OrbitKind::Periodic;
  out.ell = ell;
  out.turning_points = half.turning_points;
  out.samples.reserve(x1.size());
  for (double x : x1) {
    const auto it = std::lower_bound(positive.begin(), positive.end(), std::abs(x));
    const auto& s = half.samples[static_cast<std::size_t>(it - positive.begin())];
    out.samples.push_back({x, s.alpha1, x < 0.0 ? -s.beta1 : s.beta1});
  }
  return out;
}

WaveField periodic_field(double ell, const ReducedModel& model, const EigenData& eig,
                         const LaminarFlow& flow, std::size_t nx, std::size_t ny) {
  const double period = 2.0 * half_period(ell, model) / eig.tau;
  const StripGrid grid = StripGrid::periodic_grid(period, nx, ny, flow.h);
  std::vector<double> x1(grid.x.size());
  std::transform(grid.x.begin(), grid.x.end(), x1.begin(), [&](double x) { return eig.tau * x; });
  const ReducedOrbit orbit = sample_periodic_orbit(ell, model, x1);
  WaveField f = field_from_orbit(orbit, eig, flow, ny, period);
  f.grid = grid;
  return f;
}

double crest_critical_height(const ReducedModel& model, const EigenData& eig, const LaminarFlow& flow) {
  const double alpha = eig.tau * eig.tau * model.alpha_minus;
  auto uy = [&](double y) { return hatphi_y_near_bottom(alpha, y, eig, flow); };
  if (uy(0.0) >= 0.0 || uy(flow.h) <= 0.0) return 0.0;
  return bracketed_root(uy, 0.0, flow.h);
}

WaveField solitary_field(const ReducedModel& model, const EigenData& eig, const LaminarFlow& flow,
                         const SolitaryGrid& grid) {
  if (grid.nx < 16 || grid.ny < 16) throw RangeError("degenerate grid: need at least 16 x 16 nodes");
  if (!(grid.x1_max > 0.0)) throw RangeError("x1_max must be positive");
  const std::size_t nx = grid.nx % 2 == 0 ? grid.nx + 1 : grid.nx;
  std::vector<double> x1(nx);
  const std::size_t mid = nx / 2;
  for (std::size_t i = 0; i < nx; ++i) {
    x1[i] = grid.x1_max * (static_cast<double>(i) - static_cast<double>(mid)) / static_cast<double>(mid);
  }
  x1[mid] = 0.0;
  std::size_t ny = grid.ny;
  const double yc = crest_critical_height(model, eig, flow);
  if (yc > 0.0) {
    const double want = std::ceil(static_cast<double>(grid.min_vortex_rows) * flow.h / yc);
    ny = std::max(ny, static_cast<std::size_t>(std::min(want, static_cast<double>(grid.max_ny))));
  }
  return field_from_orbit(homoclinic_orbit(model, x1), eig, flow, ny);
}

}  // namespace catseye
