#include "catseye/reduced.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "catseye/error.hpp"
#include "catseye/ode.hpp"
#include "catseye/roots.hpp"

namespace catseye {

namespace {

using State = std::array<double, 2>;

void require_level(double ell, const ReducedModel& model, bool allow_saddle) {
  const bool ok = ell > 0.0 && (allow_saddle ? ell <= model.L : ell < model.L);
  if (!ok) {
    std::ostringstream msg;
    msg << "energy level " << ell << " outside (0, " << model.L << (allow_saddle ? "]" : ")");
    throw RangeError(msg.str());
  }
}

// Integrand-level quadrature: 15-point Gauss-Kronrod, adaptive to depth 15.
template <class F>
double integrate(F&& f, double a, double b) {
  // The Kronrod estimate is pessimistic for these smooth integrands: 1e-12
  // already returns results at rounding level, while 1e-14 sits below the
  // rounding floor and forces refinement to full depth.
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, 1e-12, &err);
}

// The third root of (A/3) a^3 - a^2/2 + ell; the roots sum to 3/(2A).
double third_root(double lo, double hi, const ReducedModel& model) {
  return 1.5 / model.A - lo - hi;
}

}  // namespace

ReducedModel ReducedModel::from_coefficient(double A, double tau) {
  if (!(A > 0.0)) throw DomainError("reduced coefficient A must be positive");
  ReducedModel m;
  m.A = A;
  m.tau = tau;
  m.alpha_plus = 1.0 / A;
  m.alpha_minus = -0.5 / A;
  m.L = 1.0 / (6.0 * A * A);
  return m;
}

ReducedModel build_model(const EigenData& eig) {
  return ReducedModel::from_coefficient(0.5 * std::pow(eig.c0_effective, 3), eig.tau);
}

double hamiltonian_H1(double alpha1, double beta1, const ReducedModel& model) {
  return 0.5 * (alpha1 * alpha1 + beta1 * beta1) - model.A / 3.0 * alpha1 * alpha1 * alpha1;
}

PhasePoint reduced_rhs(const PhasePoint& p, const ReducedModel& model) {
  return {p.beta, -p.alpha + model.A * p.alpha * p.alpha};
}

PhasePoint homoclinic_closed_form(double x1, const ReducedModel& model) {
  const double sech = 1.0 / std::cosh(0.5 * x1);
  const double sech2 = sech * sech;
  const double alpha = 1.0 / model.A - 1.5 / model.A * sech2;
  // d/dx sech^2(x/2) = -sech^2(x/2) tanh(x/2)
  const double beta = 1.5 / model.A * sech2 * std::tanh(0.5 * x1);
  return {alpha, beta};
}

std::string to_string(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::Homoclinic: return "homoclinic";
    case OrbitKind::Periodic: return "periodic";
    case OrbitKind::Trajectory: break;
  }
  return "trajectory";
}

ReducedOrbit integrate_orbit(const PhasePoint& seed, const ReducedModel& model, double x_begin,
                             double x_end, const IntegrationOptions& options) {
  ReducedOrbit orbit;
  orbit.ell = hamiltonian_H1(seed.alpha, seed.beta, model);
  const double A = model.A;
  DormandPrince<2> stepper(
      [A](double, const State& y) -> State { return {y[1], -y[0] + A * y[0] * y[0]}; },
      options.tol);

  const double dir = x_end >= x_begin ? 1.0 : -1.0;
  std::size_t next = 0;
  const auto& want = options.sample_x;
  if (want.empty()) {
    orbit.samples.push_back({x_begin, seed.alpha, seed.beta});
  } else {
    orbit.samples.reserve(want.size());
    while (next < want.size() && want[next] == x_begin) {
      orbit.samples.push_back({x_begin, seed.alpha, seed.beta});
      ++next;
    }
    if (next < want.size() && dir * (want[next] - x_begin) < 0.0) {
      throw RangeError("sample positions must follow the integration direction");
    }
  }
  stepper.integrate(x_begin, State{seed.alpha, seed.beta}, x_end, [&](const DenseStep<2>& step) {
    if (std::abs(step.y1[0]) > options.box || std::abs(step.y1[1]) > options.box) {
      throw SolverError("orbit left basin");
    }
    if (want.empty()) {
      orbit.samples.push_back({step.x1, step.y1[0], step.y1[1]});
    } else {
      while (next < want.size() && dir * (want[next] - step.x1) <= 0.0) {
        const State y = want[next] == step.x1 ? step.y1 : step(want[next]);
        orbit.samples.push_back({want[next], y[0], y[1]});
        ++next;
      }
    }
    return true;
  });
  if (!want.empty() && next < want.size()) throw RangeError("sample positions outside the integration span");
  return orbit;
}

std::pair<double, double> turning_points(double ell, const ReducedModel& model) {
  require_level(ell, model, false);
  auto f = [&](double a) { return hamiltonian_H1(a, 0.0, model) - ell; };
  const double lo = bracketed_root(f, model.alpha_minus, 0.0);
  const double hi = bracketed_root(f, 0.0, model.alpha_plus);
  return {lo, hi};
}

double half_period(double ell, const ReducedModel& model) {
  const auto [lo, hi] = turning_points(ell, model);
  const double third = third_root(lo, hi, model);
  const double a = model.A / 3.0;
  // ell - H1(alpha, 0) = a (alpha - lo)(hi - alpha)(third - alpha). Split at the
  // midpoint; alpha = lo + t^2 and alpha = hi - t^2 remove both square-root zeros.
  const double mid = 0.5 * (lo + hi);
  const double tm = std::sqrt(mid - lo);
  auto left = [&](double t) {
    const double alpha = lo + t * t;
    return 2.0 / std::sqrt(2.0 * a * (hi - alpha) * (third - alpha));
  };
  auto right = [&](double t) {
    const double alpha = hi - t * t;
    return 2.0 / std::sqrt(2.0 * a * (alpha - lo) * (third - alpha));
  };
  return integrate(left, 0.0, tm) + integrate(right, 0.0, std::sqrt(hi - mid));
}

double vortex_bottom_half_width(double ell, const ReducedModel& model) {
  require_level(ell, model, true);
  double lo, hi;
  if (ell == model.L) {
    lo = model.alpha_minus;
    hi = model.alpha_plus;
  } else {
    std::tie(lo, hi) = turning_points(ell, model);
  }
  const double third = ell == model.L ? model.alpha_plus : third_root(lo, hi, model);
  const double a = model.A / 3.0;
  auto integrand = [&](double t) {
    const double alpha = lo + t * t;
    return 2.0 / std::sqrt(2.0 * a * (hi - alpha) * (third - alpha));
  };
  return integrate(integrand, 0.0, std::sqrt(-lo));
}

ReducedOrbit periodic_orbit(double ell, const ReducedModel& model,
                            const IntegrationOptions& options, double x_end) {
  const auto tp = turning_points(ell, model);
  ReducedOrbit orbit = integrate_orbit({tp.first, 0.0}, model, 0.0, x_end, options);
  orbit.kind = OrbitKind::Periodic;
  orbit.ell = ell;
  orbit.turning_points = tp;
  return orbit;
}

double integrated_half_period(double ell, const ReducedModel& model, double tol) {
  const auto [lo, hi] = turning_points(ell, model);
  const double A = model.A;
  DormandPrince<2> stepper(
      [A](double, const State& y) -> State { return {y[1], -y[0] + A * y[0] * y[0]}; }, tol);
  // beta1 > 0 on the lower half of the orbit; the half-period is the first
  // positive-to-non-positive crossing.
  double crossing = std::numeric_limits<double>::quiet_NaN();
  const double horizon = 1e4;
  stepper.integrate(0.0, State{lo, 0.0}, horizon, [&](const DenseStep<2>& step) {
    if (step.x0 > 0.0 && step.y0[1] > 0.0 && step.y1[1] <= 0.0) {
      crossing = bracketed_root([&](double x) { return step(x)[1]; }, step.x0, step.x1);
      return false;
    }
    return true;
  });
  if (std::isnan(crossing)) throw SolverError("no half-period crossing within the horizon");
  return crossing;
}

ReducedOrbit homoclinic_orbit(const ReducedModel& model, std::span<const double> x1) {
  ReducedOrbit orbit;
  orbit.kind = OrbitKind::Homoclinic;
  orbit.ell = model.L;
  orbit.turning_points = {model.alpha_minus, model.alpha_plus};
  orbit.samples.reserve(x1.size());
  for (double x : x1) {
    const PhasePoint p = homoclinic_closed_form(x, model);
    orbit.samples.push_back({x, p.alpha, p.beta});
  }
  return orbit;
}

HomoclinicShot shoot_homoclinic(const ReducedModel& model, double tol, double offset) {
  // Linearization at the saddle has eigenvalues +-1; the unstable direction
  // (1, 1) entered with alpha decreasing heads into the loop.
  const double d = offset / std::sqrt(2.0);
  const State seed{model.alpha_plus - d, -d};
  const double cap = 4.0 * std::abs(std::log(offset));
  const double A = model.A;
  DormandPrince<2> stepper(
      [A](double, const State& y) -> State { return {y[1], -y[0] + A * y[0] * y[0]}; }, tol);

  std::vector<OrbitSample> raw{{0.0, seed[0], seed[1]}};
  double crest = std::numeric_limits<double>::quiet_NaN();
  State at_crest{};
  stepper.integrate(0.0, seed, cap, [&](const DenseStep<2>& step) {
    if (step.y0[1] < 0.0 && step.y1[1] >= 0.0) {
      crest = bracketed_root([&](double x) { return step(x)[1]; }, step.x0, step.x1);
      at_crest = step(crest);
      return false;
    }
    raw.push_back({step.x1, step.y1[0], step.y1[1]});
    return true;
  });
  if (std::isnan(crest)) throw SolverError("homoclinic shooting did not reach the crest");
  // Marching the outgoing leg forward amplifies rounding like e^{x1} along the
  // stable manifold; reversibility gives it exactly as the mirror image.
  const std::size_t incoming = raw.size();
  raw.push_back({crest, at_crest[0], 0.0});
  for (std::size_t k = incoming; k-- > 0;) raw.push_back({2.0 * crest - raw[k].x1, raw[k].alpha1, -raw[k].beta1});

  HomoclinicShot shot;
  shot.crest_x1 = crest;
  shot.orbit.kind = OrbitKind::Homoclinic;
  shot.orbit.ell = hamiltonian_H1(seed[0], seed[1], model);
  shot.orbit.turning_points = {model.alpha_minus, model.alpha_plus};
  shot.orbit.samples.reserve(raw.size());
  for (const auto& s : raw) shot.orbit.samples.push_back({s.x1 - crest, s.alpha1, s.beta1});
  return shot;
}

std::vector<UnscaledSample> unscale_orbit(const ReducedOrbit& orbit, double tau) {
  if (!(tau > 0.0)) throw RangeError("unscale_orbit requires tau > 0");
  std::vector<UnscaledSample> out;
  out.reserve(orbit.samples.size());
  const double t2 = tau * tau;
  for (const auto& s : orbit.samples) out.push_back({s.x1 / tau, t2 * s.alpha1, t2 * tau * s.beta1});
  return out;
}

}  // namespace catseye
