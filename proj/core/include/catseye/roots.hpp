#pragma once

#include <cstdint>
#include <functional>

namespace catseye {

/// Root of `f` on [lo, hi] where f(lo) and f(hi) have opposite signs (or one
/// of them vanishes). Converges to adjacent doubles. Throws RangeError when
/// the interval does not bracket a root.
double bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                      std::uintmax_t max_iter = 200);

}  // namespace catseye
