#pragma once

#include <cstddef>

#include "catseye/error.hpp"
#include "catseye/field.hpp"
#include "catseye/stencil.hpp"

namespace catseye::detail {

// x-derivative stencils: centred and wrapped on periodic grids, shifted
// one-sided near the ends otherwise.
class XOps {
 public:
  XOps(const StripGrid& grid, int order) : nx_(grid.nx()), periodic_(grid.periodic) {
    if (order < 2 || order % 2 != 0) throw RangeError("x stencil order must be even and >= 2");
    const double d = grid.dx();
    if (periodic_) {
      if (nx_ < static_cast<std::size_t>(order) + 1) throw RangeError("too few columns for the x stencil");
      periodic_st_ = PeriodicStencils::centred(d, order / 2);
    } else {
      line_st_ = LineStencils::uniform(nx_, d, order);
    }
  }

  // fn(column, weight) over the stencil of derivative `deriv` (1 or 2) at column i.
  template <class Fn>
  void for_each(std::size_t i, int deriv, Fn&& fn) const {
    if (periodic_) {
      const auto& w = deriv == 1 ? periodic_st_.d1 : periodic_st_.d2;
      const long n = static_cast<long>(nx_);
      for (long m = -periodic_st_.half; m <= periodic_st_.half; ++m) {
        const double wm = w[static_cast<std::size_t>(m + periodic_st_.half)];
        if (wm == 0.0) continue;
        const long c = ((static_cast<long>(i) + m) % n + n) % n;
        fn(static_cast<std::size_t>(c), wm);
      }
    } else {
      const Stencil& s = deriv == 1 ? line_st_.d1[i] : line_st_.d2[i];
      for (std::size_t k = 0; k < s.weight.size(); ++k) {
        fn(static_cast<std::size_t>(s.first + static_cast<long>(k)), s.weight[k]);
      }
    }
  }

  template <class F>
  double apply(std::size_t i, int deriv, F&& value) const {
    double acc = 0.0;
    for_each(i, deriv, [&](std::size_t c, double w) { acc += w * value(c); });
    return acc;
  }

 private:
  std::size_t nx_;
  bool periodic_;
  PeriodicStencils periodic_st_;
  LineStencils line_st_;
};

}  // namespace catseye::detail
