#include "catseye/laminar.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "catseye/error.hpp"
#include "catseye/roots.hpp"

namespace catseye {

namespace {

double depth(double s) { return -s + std::sqrt(2.0 + s * s); }

}  // namespace

PhysicalParams::PhysicalParams(double b, double s) : b_(b), s_(s) {
  if (!(b > 0.0) || !std::isfinite(b)) throw RangeError("vorticity magnitude b must be positive");
}

PhysicalParams PhysicalParams::from_gamma(double gamma, double s) {
  if (!(gamma > 0.0)) throw RangeError("gamma must be positive to define b = gamma^{-2/3}");
  return PhysicalParams(std::pow(gamma, -2.0 / 3.0), s);
}

double PhysicalParams::gamma() const { return std::pow(b_, -1.5); }

bool PhysicalParams::admissible(double eps) const {
  const double g = gamma();
  return s_ * s_ + g * g < eps * eps;
}

LaminarFlow stream_solution(double s, double gamma) {
  if (!(gamma >= 0.0)) throw RangeError("gamma must be non-negative");
  LaminarFlow flow;
  flow.s = s;
  flow.gamma = gamma;
  flow.k = std::sqrt(2.0 + s * s);
  flow.h = flow.k - s;
  flow.kappa = (gamma + flow.k) / (flow.k * flow.k);
  flow.Rbar = 2.0 * gamma * flow.h + flow.k * flow.k;
  return flow;
}

double laminar_velocity(const LaminarFlow& flow, double y) {
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * flow.h;
  if (y < -slack || y > flow.h + slack) {
    std::ostringstream msg;
    msg << "height y = " << y << " outside [0, h] with h = " << flow.h;
    throw RangeError(msg.str());
  }
  return y + flow.s;
}

double bernoulli_constant(double s, double gamma) {
  const double k = std::sqrt(2.0 + s * s);
  return 2.0 * gamma * depth(s) + k * k;
}

ConjugateFlow conjugate_flow(double s, double gamma) {
  if (s > 0.0) throw DomainError("conjugate_flow expects a counter-current flow (s <= 0)");
  if (!(gamma >= 0.0)) throw RangeError("gamma must be non-negative");
  if (s == 0.0 && gamma == 0.0) return {0.0, depth(0.0), true};

  // R(s') - R(s) is negative as s' -> 0+ and increases through zero once on
  // the positive branch; |s| + 10 gamma brackets that crossing.
  constexpr double kBracketFactor = 10.0;
  const double target = bernoulli_constant(s, gamma);
  auto f = [&](double sp) { return bernoulli_constant(sp, gamma) - target; };
  const double hi = std::abs(s) + kBracketFactor * gamma;
  // The decreasing stretch of R on (0, ~gamma) would make s' = 0 a spurious
  // root when s = 0; start the bracket past it when possible.
  const double lo = f(0.5 * gamma) < 0.0 ? 0.5 * gamma : 0.0;
  if (f(hi) < 0.0 || f(lo) > 0.0) throw DomainError("no conjugate flow on the positive branch");
  double sp = 0.0;
  try {
    sp = bracketed_root(f, lo, hi);
  } catch (const RangeError&) {
    throw DomainError("no conjugate flow on the positive branch");
  }
  if (sp == 0.0) throw DomainError("no conjugate flow on the positive branch");
  return {sp, depth(sp), false};
}

double physical_from_scaled(double b, double scaled_length) {
  if (!(b > 0.0)) throw RangeError("b must be positive");
  return scaled_length / std::sqrt(b);
}

double scaled_from_physical(double b, double physical_length) {
  if (!(b > 0.0)) throw RangeError("b must be positive");
  return physical_length * std::sqrt(b);
}

std::vector<std::string> admissibility_warnings(double s, double gamma, double eps) {
  std::vector<std::string> out;
  const double r = std::hypot(s, gamma);
  if (!(r < eps)) {
    std::ostringstream msg;
    msg << "(s, gamma) = (" << s << ", " << gamma << ") lies outside the admissible ball of radius "
        << eps << " (|.| = " << r << ")";
    out.push_back(msg.str());
  }
  if (eps > kDefaultBallRadius) {
    std::ostringstream msg;
    msg << "ball radius " << eps << " exceeds the default " << kDefaultBallRadius
        << "; small-parameter asymptotics may be inaccurate";
    out.push_back(msg.str());
  }
  if (s >= 0.0) out.emplace_back("s >= 0: the laminar flow has no counter-current");
  return out;
}

}  // namespace catseye
