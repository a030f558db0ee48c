#pragma once

#include <span>
#include <vector>

#include "catseye/field.hpp"
#include "catseye/reduced.hpp"
#include "catseye/spectrum.hpp"

namespace catseye {

/// Surface elevation sample eta_bar(x) = h + zeta(x) in scaled coordinates.
struct SurfaceSample {
  double x = 0.0;
  double eta_bar = 0.0;
};

/// Physical surface sample eta(X).
struct ProfileSample {
  double X = 0.0;
  double eta = 0.0;
};

/// zeta = -alpha phi_1(h) / k for a centre-mode amplitude alpha.
double surface_displacement(double alpha, const EigenData& eig, const LaminarFlow& flow);

/// Leading-order surface along the orbit (alpha = tau^2 alpha1 at x = x1 / tau).
std::vector<SurfaceSample> surface_from_orbit(const ReducedOrbit& orbit, const EigenData& eig,
                                              const LaminarFlow& flow);

/// Surface in physical coordinates for vorticity b.
std::vector<ProfileSample> physical_profile(const ReducedOrbit& orbit, const EigenData& eig,
                                            const LaminarFlow& flow, double b);

/// Which slope coefficient enters the sech^2 amplitude 3 tau^2 / c0^2.
enum class ProfileConstant { Leading, Consistent };

/// Closed-form solitary profile h_- + (3 / c0^2) tau^2 sech^2(sqrt(b) tau X / 2) / sqrt(b),
/// with h_- the physical depth of the conjugate flow.
double solitary_profile_closed_form(double X, const EigenData& eig, const LaminarFlow& flow,
                                    double b, ProfileConstant constant = ProfileConstant::Consistent);

/// Reconstruct hat_phi = u + alpha phi_1 + y u_y zeta / h on the strip. The
/// orbit samples define the columns (x = x1 / tau); `ny` the rows. When
/// `period` > 0 the grid is marked periodic.
WaveField field_from_orbit(const ReducedOrbit& orbit, const EigenData& eig,
                           const LaminarFlow& flow, std::size_t ny, double period = 0.0,
                           bool parallel = false);

/// d hat_phi / dy = u_y + Phi_y - (u_y + y) Phi(x, h) / (k h) with Phi = alpha phi_1.
double hatphi_y_near_bottom(double alpha, double y, const EigenData& eig, const LaminarFlow& flow);

/// Bottom-row trace hat_phi_y(x, 0) along the orbit samples.
std::vector<double> bottom_velocity_trace(const ReducedOrbit& orbit, const EigenData& eig,
                                          const LaminarFlow& flow);

/// Samples of the periodic level-ell orbit at x1 positions (reversibility
/// gives the left half from the right).
ReducedOrbit sample_periodic_orbit(double ell, const ReducedModel& model,
                                   std::span<const double> x1, double tol = 1e-11);

/// Leading-order periodic field on a periodic grid of (nx, ny) nodes whose
/// period is 2 Sigma_ell / tau. The crest sits at x = 0.
WaveField periodic_field(double ell, const ReducedModel& model, const EigenData& eig,
                         const LaminarFlow& flow, std::size_t nx, std::size_t ny);

/// Grid for the leading-order solitary field: x1 uniform on [-x1_max, x1_max]
/// (odd nx puts the crest on a column). Rows are added until the crest vortex,
/// whose height is the zero of hat_phi_y on x = 0, spans `min_vortex_rows` rows.
struct SolitaryGrid {
  std::size_t nx = 1001;
  std::size_t ny = 128;
  double x1_max = 50.0;
  std::size_t min_vortex_rows = 8;
  std::size_t max_ny = 4096;
};

/// Height of the crest critical level (zero of hat_phi_y above the crest), or
/// 0 when the bottom velocity does not reverse there.
double crest_critical_height(const ReducedModel& model, const EigenData& eig, const LaminarFlow& flow);

WaveField solitary_field(const ReducedModel& model, const EigenData& eig, const LaminarFlow& flow,
                         const SolitaryGrid& grid = {});

}  // namespace catseye
