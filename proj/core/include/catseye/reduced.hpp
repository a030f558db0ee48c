#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catseye/spectrum.hpp"

namespace catseye {

/// Leading truncation of the scaled reduced system
///   alpha1' = beta1,  beta1' = -alpha1 + A alpha1^2,
/// with Hamiltonian H1 = (alpha1^2 + beta1^2)/2 - (A/3) alpha1^3.
struct ReducedModel {
  double A = 0.0;            ///< quadratic coefficient, c0^3 / 2
  double tau = 0.0;          ///< wavenumber used to undo the x1 = tau x scaling
  double alpha_plus = 0.0;   ///< saddle 1/A
  double alpha_minus = 0.0;  ///< homoclinic crest -1/(2A)
  double L = 0.0;            ///< saddle energy 1/(6 A^2)

  static ReducedModel from_coefficient(double A, double tau);
};

ReducedModel build_model(const EigenData& eig);

struct PhasePoint {
  double alpha = 0.0;
  double beta = 0.0;
};

double hamiltonian_H1(double alpha1, double beta1, const ReducedModel& model);

/// Right-hand side of the truncated scaled system.
PhasePoint reduced_rhs(const PhasePoint& p, const ReducedModel& model);

/// alpha1 = 1/A - 3/(2A) sech^2(x1/2) and its derivative.
PhasePoint homoclinic_closed_form(double x1, const ReducedModel& model);

enum class OrbitKind { Homoclinic, Periodic, Trajectory };

std::string to_string(OrbitKind kind);

struct OrbitSample {
  double x1 = 0.0;
  double alpha1 = 0.0;
  double beta1 = 0.0;
};

struct ReducedOrbit {
  OrbitKind kind = OrbitKind::Trajectory;
  double ell = 0.0;  ///< energy level
  std::vector<OrbitSample> samples;
  std::pair<double, double> turning_points{0.0, 0.0};
};

struct IntegrationOptions {
  double tol = 1e-10;
  /// |alpha1| and |beta1| bound; leaving it throws SolverError("orbit left basin").
  double box = 1e3;
  /// Sample positions (inside the span, in integration order). Empty keeps
  /// every accepted step.
  std::vector<double> sample_x;
};

/// Adaptive integration of the truncated system from `seed` at x_begin to x_end.
ReducedOrbit integrate_orbit(const PhasePoint& seed, const ReducedModel& model, double x_begin,
                             double x_end, const IntegrationOptions& options = {});

/// The two roots alpha_- < 0 < alpha_+ < 1/A of H1(alpha, 0) = ell for
/// ell in (0, L).
std::pair<double, double> turning_points(double ell, const ReducedModel& model);

/// Half-period of the level-ell orbit by desingularized quadrature, ell in (0, L).
double half_period(double ell, const ReducedModel& model);

/// Distance from the crest to the first zero of alpha1 on the level-ell orbit,
/// ell in (0, L] (the homoclinic level is allowed).
double vortex_bottom_half_width(double ell, const ReducedModel& model);

/// Periodic orbit at level ell seeded at its crest (alpha_-(ell), 0) on x1 = 0.
ReducedOrbit periodic_orbit(double ell, const ReducedModel& model,
                            const IntegrationOptions& options, double x_end);

/// Half-period found by integrating from the crest to the next zero of beta1.
double integrated_half_period(double ell, const ReducedModel& model, double tol = 1e-10);

/// Homoclinic orbit sampled from the closed form at the given positions
/// (crest at x1 = 0).
ReducedOrbit homoclinic_orbit(const ReducedModel& model, std::span<const double> x1);

struct HomoclinicShot {
  ReducedOrbit orbit;  ///< samples shifted so the crest sits at x1 = 0
  double crest_x1 = 0.0;  ///< crest position in the unshifted integration variable
};

/// Numerical homoclinic: leave the saddle along its unstable eigenvector at
/// distance `offset`, integrate to the crest and reflect the incoming leg.
HomoclinicShot shoot_homoclinic(const ReducedModel& model, double tol = 1e-10,
                                double offset = 1e-8);

/// Orbit in unscaled variables x = x1 / tau, alpha = tau^2 alpha1, beta = tau^3 beta1.
struct UnscaledSample {
  double x = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

std::vector<UnscaledSample> unscale_orbit(const ReducedOrbit& orbit, double tau);

}  // namespace catseye
