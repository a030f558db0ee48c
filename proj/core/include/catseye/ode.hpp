#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>

#include "catseye/error.hpp"

namespace catseye {

/// Accepted step of an embedded Runge-Kutta integrator with its
/// continuous extension (Hairer's 4th-order dense output for DOPRI5).
template <std::size_t N>
struct DenseStep {
  using State = std::array<double, N>;

  double x0 = 0.0;
  double x1 = 0.0;
  State y0{};
  State y1{};
  std::array<State, 5> rcont{};

  State operator()(double x) const {
    const double theta = (x - x0) / (x1 - x0);
    const double theta1 = 1.0 - theta;
    State y{};
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = rcont[0][i] +
             theta * (rcont[1][i] +
                      theta1 * (rcont[2][i] + theta * (rcont[3][i] + theta1 * rcont[4][i])));
    }
    return y;
  }
};

/// Dormand-Prince 5(4) with local extrapolation, per-step error control
/// ||err / (tol (1 + |y|))||_2 <= 1 and dense output.
template <std::size_t N>
class DormandPrince {
 public:
  using State = std::array<double, N>;
  using Rhs = std::function<State(double, const State&)>;

  DormandPrince(Rhs rhs, double tol, std::size_t max_steps = 2'000'000)
      : rhs_(std::move(rhs)), tol_(tol), max_steps_(max_steps) {
    if (!(tol > 0.0)) throw RangeError("integrator tolerance must be positive");
  }

  /// Integrates from (x0, y0) to x_end (either direction). `observer` gets every
  /// accepted DenseStep and returns false to stop early. Returns the number of
  /// accepted steps.
  template <class Observer>
  std::size_t integrate(double x0, const State& y0, double x_end, Observer&& observer) const {
    const double dir = x_end >= x0 ? 1.0 : -1.0;
    const double span = std::abs(x_end - x0);
    if (span == 0.0) return 0;

    State y = y0;
    double x = x0;
    State k1 = rhs_(x, y);
    double h = initial_step(x, y, k1, span);
    std::size_t accepted = 0;
    std::size_t attempts = 0;
    bool last = false;

    while (!last) {
      if (++attempts > max_steps_) throw SolverError("ODE integrator exceeded its step budget");
      if (h >= std::abs(x_end - x)) {
        h = std::abs(x_end - x);
        last = true;
      }
      const double hs = dir * h;
      State k2, k3, k4, k5, k6, k7, ynew, tmp;
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * (a21 * k1[i]);
      k2 = rhs_(x + c2 * hs, tmp);
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
      k3 = rhs_(x + c3 * hs, tmp);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      k4 = rhs_(x + c4 * hs, tmp);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      k5 = rhs_(x + c5 * hs, tmp);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      k6 = rhs_(x + hs, tmp);
      for (std::size_t i = 0; i < N; ++i)
        ynew[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      k7 = rhs_(x + hs, ynew);

      double err = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                               e7 * k7[i]);
        const double sk = tol_ * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i])));
        err += (e / sk) * (e / sk);
      }
      err = std::sqrt(err / static_cast<double>(N));
      if (!std::isfinite(err)) throw SolverError("ODE integrator produced a non-finite state");

      if (err <= 1.0) {
        DenseStep<N> step;
        step.x0 = x;
        step.x1 = last ? x_end : x + hs;
        step.y0 = y;
        step.y1 = ynew;
        for (std::size_t i = 0; i < N; ++i) {
          const double dy = ynew[i] - y[i];
          const double bspl = hs * k1[i] - dy;
          step.rcont[0][i] = y[i];
          step.rcont[1][i] = dy;
          step.rcont[2][i] = bspl;
          step.rcont[3][i] = dy - hs * k7[i] - bspl;
          step.rcont[4][i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                   d6 * k6[i] + d7 * k7[i]);
        }
        ++accepted;
        x = step.x1;
        y = ynew;
        k1 = k7;
        if (!observer(static_cast<const DenseStep<N>&>(step))) break;
        const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= fac;
      } else {
        last = false;
        h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      }
      if (!last && h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
        throw SolverError("ODE integrator step size underflow");
      }
    }
    return accepted;
  }

  double tolerance() const noexcept { return tol_; }

 private:
  double initial_step(double x, const State& y, const State& f0, double span) const {
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = tol_ * (1.0 + std::abs(y[i]));
      dnf += (f0[i] / sk) * (f0[i] / sk);
      dny += (y[i] / sk) * (y[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    (void)x;
    return std::min(h, span);
  }

  static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                          a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  static constexpr double d1 = -12715105075.0 / 11282082432.0,
                          d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0,
                          d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  Rhs rhs_;
  double tol_;
  std::size_t max_steps_;
};

}  // namespace catseye
