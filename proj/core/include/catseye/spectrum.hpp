#pragma once

#include <cstddef>
#include <vector>

#include "catseye/laminar.hpp"

namespace catseye {

/// Closed-form eigenfunction of -phi'' = mu phi on (0, h) with phi(0) = 0:
/// amplitude * sinh(w y) for mu < 0, amplitude * y for mu = 0 and
/// amplitude * sin(w y) for mu > 0.
class Eigenfunction {
 public:
  enum class Shape { Hyperbolic, Linear, Trigonometric };

  Eigenfunction() = default;
  Eigenfunction(Shape shape, double amplitude, double wavenumber)
      : shape_(shape), amplitude_(amplitude), wavenumber_(wavenumber) {}

  double operator()(double y) const;
  double derivative(double y) const;
  double second_derivative(double y) const;

  Shape shape() const noexcept { return shape_; }
  double amplitude() const noexcept { return amplitude_; }
  double wavenumber() const noexcept { return wavenumber_; }

 private:
  Shape shape_ = Shape::Linear;
  double amplitude_ = 0.0;
  double wavenumber_ = 0.0;
};

/// Leading-order slope of the normalized centre mode as the parameters vanish.
double c0_leading();

/// Spectral data of the Robin problem phi(0) = 0, phi'(h) = kappa phi(h).
struct EigenData {
  double h = 0.0;
  double kappa = 0.0;
  double tau = 0.0;                ///< mu[0] = -tau^2
  std::vector<double> mu;          ///< increasing
  std::vector<Eigenfunction> phi;  ///< L^2(0, h)-orthonormal, phi'(0) > 0
  double c0_leading = 0.0;         ///< asymptotic constant sqrt(3 / 2^{3/2})
  double c0_effective = 0.0;       ///< phi_1'(0) of the actual centre mode
  double c0_profile = 0.0;        ///< sqrt(2 A k / phi_1(h)) with A = c0_effective^3 / 2

  const Eigenfunction& centre_mode() const { return phi.front(); }
};

/// tau h as the root of z coth z = kappa_h on (0, 50]. Throws DomainError
/// when kappa_h <= 1 and RangeError past the bracketing cap.
double dispersion_root_scaled(double kappa_h);

/// Positive root tau of tau h coth(tau h) = kappa h.
double dispersion_root(const LaminarFlow& flow);

struct Eigenpair {
  double mu = 0.0;
  Eigenfunction phi;
};

/// mu_1 = -tau^2 with the normalized sinh mode.
Eigenpair negative_eigenpair(const LaminarFlow& flow, double tau);

/// The lowest `count` eigenpairs of the Robin problem on (0, h), for any
/// kappa (covers kappa h above, at and below 1).
std::vector<Eigenpair> robin_modes(double h, double kappa, std::size_t count);

/// mu_2 ... mu_n with eigenfunctions. Requires n >= 2.
std::vector<Eigenpair> positive_spectrum(const LaminarFlow& flow, std::size_t n);

/// Full spectral data with `modes` eigenpairs (at least 2).
EigenData compute_spectrum(const LaminarFlow& flow, std::size_t modes = 5);

/// phi'(h) - kappa phi(h).
double robin_residual(const Eigenfunction& phi, double h, double kappa);

/// max_{i,j} |<phi_i, phi_j> - delta_ij| in L^2(0, h), by Gauss-Kronrod quadrature.
double gram_defect(const std::vector<Eigenfunction>& phi, double h);

}  // namespace catseye
