#pragma once

// Independent reference computations for the tests. Deliberately simple and
// slow: bisection, composite Simpson, AGM elliptic integrals, fixed-step RK4.

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

inline double bisect(const std::function<double(double)>& f, double a, double b, int iters = 200) {
  double fa = f(a);
  if (fa == 0.0) return a;
  if ((fa < 0.0) == (f(b) < 0.0)) throw std::invalid_argument("bisect: no sign change");
  for (int i = 0; i < iters; ++i) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  if (n % 2) ++n;
  const double hstep = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * hstep);
  return acc * hstep / 3.0;
}

// Complete elliptic integral of the first kind, parameter m = k^2.
inline double elliptic_K(double m) {
  double a = 1.0;
  double g = std::sqrt(1.0 - m);
  for (int i = 0; i < 60 && std::abs(a - g) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Classical RK4 for alpha'' = -alpha + A alpha^2 with a fixed step.
inline std::pair<double, double> rk4_reduced(double A, double alpha, double beta, double x_span,
                                             int steps) {
  const double hs = x_span / steps;
  auto f = [A](double a, double) { return -a + A * a * a; };
  for (int i = 0; i < steps; ++i) {
    const double k1a = beta, k1b = f(alpha, beta);
    const double k2a = beta + 0.5 * hs * k1b, k2b = f(alpha + 0.5 * hs * k1a, 0);
    const double k3a = beta + 0.5 * hs * k2b, k3b = f(alpha + 0.5 * hs * k2a, 0);
    const double k4a = beta + hs * k3b, k4b = f(alpha + hs * k3a, 0);
    alpha += hs / 6.0 * (k1a + 2 * k2a + 2 * k3a + k4a);
    beta += hs / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b);
  }
  return {alpha, beta};
}

}  // namespace oracle
