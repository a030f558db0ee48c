#include "catseye/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "catseye/error.hpp"
#include "catseye/roots.hpp"

namespace catseye {

namespace {

constexpr double kPi = std::numbers::pi;
// Cap on tau h; beyond it coth is 1 to machine precision.
constexpr double kMaxTauH = 50.0;

double x_coth_x(double z) {
  if (z < 1e-4) {
    const double z2 = z * z;
    return 1.0 + z2 / 3.0 - z2 * z2 / 45.0;
  }
  return z / std::tanh(z);
}

// Normalization amplitudes, closed form integrals of sinh^2 and sin^2.
double sinh_amplitude(double w, double h) {
  // int_0^h sinh^2(w y) dy = sinh(2 w h) / (4 w) - h / 2
  const double x = 2.0 * w * h;
  double norm2;
  if (x < 1e-3) {
    // (h/2)(sinh x / x - 1) by its series, free of cancellation
    const double x2 = x * x;
    norm2 = h * (x2 / 12.0 + x2 * x2 / 240.0 + x2 * x2 * x2 / 10080.0);
  } else {
    norm2 = std::sinh(x) / (4.0 * w) - 0.5 * h;
  }
  return 1.0 / std::sqrt(norm2);
}

double sin_amplitude(double w, double h) {
  const double norm2 = 0.5 * h - std::sin(2.0 * w * h) / (4.0 * w);
  return 1.0 / std::sqrt(norm2);
}

}  // namespace

double Eigenfunction::operator()(double y) const {
  switch (shape_) {
    case Shape::Hyperbolic: return amplitude_ * std::sinh(wavenumber_ * y);
    case Shape::Trigonometric: return amplitude_ * std::sin(wavenumber_ * y);
    case Shape::Linear: break;
  }
  return amplitude_ * y;
}

double Eigenfunction::derivative(double y) const {
  switch (shape_) {
    case Shape::Hyperbolic: return amplitude_ * wavenumber_ * std::cosh(wavenumber_ * y);
    case Shape::Trigonometric: return amplitude_ * wavenumber_ * std::cos(wavenumber_ * y);
    case Shape::Linear: break;
  }
  return amplitude_;
}

double Eigenfunction::second_derivative(double y) const {
  const double w2 = wavenumber_ * wavenumber_;
  switch (shape_) {
    case Shape::Hyperbolic: return w2 * (*this)(y);
    case Shape::Trigonometric: return -w2 * (*this)(y);
    case Shape::Linear: break;
  }
  return 0.0;
}

double c0_leading() { return std::sqrt(3.0 / std::pow(2.0, 1.5)); }

double dispersion_root_scaled(double kappa_h) {
  if (!(kappa_h > 1.0)) {
    std::ostringstream msg;
    msg << "no negative eigenvalue: flow outside the counter-current regime (kappa h = "
        << kappa_h << " <= 1)";
    throw DomainError(msg.str());
  }
  if (kappa_h >= x_coth_x(kMaxTauH)) {
    throw RangeError("kappa h beyond the dispersion bracketing cap tau h <= 50");
  }
  return bracketed_root([kappa_h](double z) { return x_coth_x(z) - kappa_h; }, 0.0, kMaxTauH);
}

double dispersion_root(const LaminarFlow& flow) {
  return dispersion_root_scaled(flow.kappa * flow.h) / flow.h;
}

Eigenpair negative_eigenpair(const LaminarFlow& flow, double tau) {
  if (!(tau > 0.0)) throw RangeError("negative_eigenpair requires tau > 0");
  return {-tau * tau,
          Eigenfunction(Eigenfunction::Shape::Hyperbolic, sinh_amplitude(tau, flow.h), tau)};
}

std::vector<Eigenpair> robin_modes(double h, double kappa, std::size_t count) {
  std::vector<Eigenpair> out;
  out.reserve(count);
  if (count == 0) return out;
  const double q = kappa * h;
  // Lowest mode: sinh for q > 1, linear for q = 1, sin on (0, pi/2) for q < 1.
  if (q > 1.0) {
    const double w = dispersion_root_scaled(q) / h;
    out.push_back({-w * w, Eigenfunction(Eigenfunction::Shape::Hyperbolic, sinh_amplitude(w, h), w)});
  } else if (std::abs(q - 1.0) < 1e-12) {
    out.push_back({0.0, Eigenfunction(Eigenfunction::Shape::Linear, std::sqrt(3.0 / (h * h * h)), 0.0)});
  } else {
    // (q sin z - z cos z) / z goes from q - 1 < 0 at z = 0 to a positive value
    // at pi/2 when q > 0; for q <= 0 the root moves into (pi/2, pi).
    auto f = [q](double z) { return q * (z == 0.0 ? 1.0 : std::sin(z) / z) - std::cos(z); };
    const double lo = q > 0.0 ? 0.0 : 0.5 * kPi;
    const double hi = q > 0.0 ? 0.5 * kPi : kPi;
    const double z = bracketed_root(f, lo, hi);
    const double w = z / h;
    out.push_back({w * w, Eigenfunction(Eigenfunction::Shape::Trigonometric, sin_amplitude(w, h), w)});
  }
  // Remaining modes: one root of q sin z - z cos z per branch
  // ((j - 1/2) pi, (j + 1/2) pi), j = 1, 2, ... (shifted by one branch when q <= 0).
  const std::size_t offset = q > 0.0 ? 0 : 1;
  auto f = [q](double z) { return q * std::sin(z) - z * std::cos(z); };
  for (std::size_t j = 1 + offset; out.size() < count; ++j) {
    const double lo = (static_cast<double>(j) - 0.5) * kPi;
    const double hi = (static_cast<double>(j) + 0.5) * kPi;
    const double z = bracketed_root(f, lo, hi);
    const double w = z / h;
    Eigenfunction phi(Eigenfunction::Shape::Trigonometric, sin_amplitude(w, h), w);
    out.push_back({w * w, phi});
  }
  return out;
}

std::vector<Eigenpair> positive_spectrum(const LaminarFlow& flow, std::size_t n) {
  if (n < 2) throw RangeError("positive_spectrum requires n >= 2");
  auto modes = robin_modes(flow.h, flow.kappa, n);
  modes.erase(modes.begin());
  return modes;
}

EigenData compute_spectrum(const LaminarFlow& flow, std::size_t modes) {
  if (modes < 2) throw RangeError("compute_spectrum requires at least two modes");
  EigenData data;
  data.h = flow.h;
  data.kappa = flow.kappa;
  data.tau = dispersion_root(flow);
  auto pairs = robin_modes(flow.h, flow.kappa, modes);
  for (auto& p : pairs) {
    data.mu.push_back(p.mu);
    data.phi.push_back(p.phi);
  }
  const Eigenfunction& phi1 = data.phi.front();
  data.c0_leading = c0_leading();
  data.c0_effective = phi1.derivative(0.0);
  const double A = 0.5 * std::pow(data.c0_effective, 3);
  data.c0_profile = std::sqrt(2.0 * A * flow.k / phi1(flow.h));
  return data;
}

double robin_residual(const Eigenfunction& phi, double h, double kappa) {
  return phi.derivative(h) - kappa * phi(h);
}

double gram_defect(const std::vector<Eigenfunction>& phi, double h) {
  using boost::math::quadrature::gauss_kronrod;
  double worst = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    for (std::size_t j = i; j < phi.size(); ++j) {
      auto f = [&](double y) { return phi[i](y) * phi[j](y); };
      const double g = gauss_kronrod<double, 61>::integrate(f, 0.0, h, 8, 1e-15);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace catseye
