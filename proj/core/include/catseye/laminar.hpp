#pragma once

#include <optional>
#include <string>
#include <vector>

namespace catseye {

/// Default radius of the admissible parameter ball |s|^2 + gamma^2 < eps^2.
inline constexpr double kDefaultBallRadius = 0.15;

/// Physical parameters: vorticity magnitude b and the bottom slip s of the
/// underlying shear flow. The weak-gravity parameter gamma = b^{-3/2} is always
/// derived from b, never stored.
class PhysicalParams {
 public:
  /// Throws RangeError unless b > 0.
  PhysicalParams(double b, double s);

  /// Parameters with vorticity chosen so that b^{-3/2} equals `gamma` (> 0).
  static PhysicalParams from_gamma(double gamma, double s);

  double b() const noexcept { return b_; }
  double s() const noexcept { return s_; }
  double gamma() const;

  /// True when (s, gamma) lies strictly inside the ball of radius `eps`.
  bool admissible(double eps = kDefaultBallRadius) const;

 private:
  double b_;
  double s_;
};

/// Laminar (x-independent) solution u(y; s) = y^2/2 + s y of the scaled problem
/// with unit flux, together with the coefficients the rest of the pipeline
/// depends on.
struct LaminarFlow {
  double s = 0.0;      ///< slip u'(0)
  double gamma = 0.0;  ///< weak gravity b^{-3/2}
  double h = 0.0;      ///< depth, u(h) = 1
  double k = 0.0;      ///< surface velocity u'(h) = h + s
  double kappa = 0.0;  ///< Robin coefficient (gamma + k) / k^2
  double Rbar = 0.0;   ///< scaled Bernoulli constant 2 gamma h + k^2

  /// u(y; s).
  double stream(double y) const noexcept { return 0.5 * y * y + s * y; }
};

LaminarFlow stream_solution(double s, double gamma);

/// Horizontal velocity u_y(y) = y + s. Throws RangeError outside [0, h].
double laminar_velocity(const LaminarFlow& flow, double y);

/// Scaled Bernoulli constant of the laminar flow with slip `s`.
double bernoulli_constant(double s, double gamma);

struct ConjugateFlow {
  double s = 0.0;           ///< slip of the unidirectional conjugate, s' >= 0
  double h = 0.0;           ///< its depth h(s')
  bool degenerate = false;  ///< s' coincides with s (s = gamma = 0)
};

/// Unidirectional laminar flow with the same flux and Bernoulli constant as the
/// counter-current flow with slip s <= 0. Throws DomainError for s > 0 or
/// when no positive-branch root exists.
ConjugateFlow conjugate_flow(double s, double gamma);

/// Scaled length -> physical length: L / sqrt(b).
double physical_from_scaled(double b, double scaled_length);
/// Physical length -> scaled length: L sqrt(b).
double scaled_from_physical(double b, double physical_length);

/// Human-readable warnings for parameters outside the admissible ball.
std::vector<std::string> admissibility_warnings(double s, double gamma,
                                                double eps = kDefaultBallRadius);

}  // namespace catseye
