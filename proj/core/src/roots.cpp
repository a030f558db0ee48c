#include "catseye/roots.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "catseye/error.hpp"

namespace catseye {

double bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                      std::uintmax_t max_iter) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi) || !std::isfinite(flo) || !std::isfinite(fhi)) {
    std::ostringstream msg;
    msg << "interval [" << lo << ", " << hi << "] does not bracket a root (f = " << flo
        << ", " << fhi << ")";
    throw RangeError(msg.str());
  }
  auto tol = [](double a, double b) {
    return std::abs(b - a) <= 2.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(a), std::abs(b));
  };
  std::uintmax_t iters = max_iter;
  const auto [a, b] =
      boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  // Pick the endpoint with the smaller residual.
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

}  // namespace catseye
