#include "catseye/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "catseye/error.hpp"
#include "catseye/flow_force.hpp"
#include "catseye/laminar.hpp"
#include "catseye/roots.hpp"

namespace catseye {

std::string to_string(StagnationType type) {
  switch (type) {
    case StagnationType::Center: return "center";
    case StagnationType::Saddle: return "saddle";
    default: return "degenerate";
  }
}

std::string to_string(StreamlineTag tag) {
  switch (tag) {
    case StreamlineTag::Closed: return "closed";
    case StreamlineTag::SurfaceDiffeomorphic: return "surface-diffeomorphic";
    default: return "unclassified";
  }
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Flattened (x, y) to physical (X, Y), with eta_bar interpolated linearly
// between columns (wrapping on periodic grids).
Point to_physical_point(const WaveField& f, double b, Point p) {
  const auto& xs = f.grid.x;
  const std::size_t n = xs.size();
  const double dx = f.grid.dx();
  double t = (p.x - xs.front()) / dx;
  double e;
  if (f.grid.periodic) {
    const double nd = static_cast<double>(n);
    t = std::fmod(std::fmod(t, nd) + nd, nd);
    const auto i0 = std::min(static_cast<std::size_t>(t), n - 1);
    const double w = t - static_cast<double>(i0);
    e = (1.0 - w) * f.eta_bar[i0] + w * f.eta_bar[(i0 + 1) % n];
  } else {
    t = std::clamp(t, 0.0, static_cast<double>(n - 1));
    const auto i0 = std::min(static_cast<std::size_t>(t), n - 2);
    const double w = t - static_cast<double>(i0);
    e = (1.0 - w) * f.eta_bar[i0] + w * f.eta_bar[i0 + 1];
  }
  const double sb = std::sqrt(b);
  return {p.x / sb, p.y * e / f.grid.h / sb};
}

Polyline to_physical_line(const WaveField& f, double b, const Polyline& line) {
  Polyline out;
  out.closed = line.closed;
  out.points.reserve(line.points.size());
  for (const Point& p : line.points) out.points.push_back(to_physical_point(f, b, p));
  return out;
}

GridScalar grid_scalar(const WaveField& f, std::vector<double> values) {
  GridScalar g;
  g.x = f.grid.x;
  g.y.resize(f.grid.rows());
  for (std::size_t j = 0; j < g.y.size(); ++j) g.y[j] = f.grid.y(j);
  g.values = std::move(values);
  g.periodic = f.grid.periodic;
  return g;
}

// Root of the bottom trace between columns i and i+1 from a cubic through
// four neighbouring samples.
double polish_bottom_root(const std::vector<double>& x, const std::vector<double>& t,
                          std::size_t i, bool periodic, double period) {
  const std::size_t n = x.size();
  std::array<double, 4> xs{}, ts{};
  for (int m = -1; m <= 2; ++m) {
    long k = static_cast<long>(i) + m;
    double shift = 0.0;
    if (periodic) {
      if (k < 0) { k += static_cast<long>(n); shift = -period; }
      if (k >= static_cast<long>(n)) { k -= static_cast<long>(n); shift = period; }
    } else {
      k = std::clamp(k, 0L, static_cast<long>(n) - 1);
    }
    xs[static_cast<std::size_t>(m + 1)] = x[static_cast<std::size_t>(k)] + shift;
    ts[static_cast<std::size_t>(m + 1)] = t[static_cast<std::size_t>(k)];
  }
  const bool distinct = xs[0] < xs[1] && xs[2] < xs[3];
  auto lagrange = [&](double z) {
    if (!distinct) {
      const double w = (z - xs[1]) / (xs[2] - xs[1]);
      return (1.0 - w) * ts[1] + w * ts[2];
    }
    double acc = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
      double l = 1.0;
      for (std::size_t c = 0; c < 4; ++c) {
        if (c != a) l *= (z - xs[c]) / (xs[a] - xs[c]);
      }
      acc += l * ts[a];
    }
    return acc;
  };
  return bracketed_root(lagrange, xs[1], xs[2]);
}

double bilinear(const std::array<double, 4>& c, double u, double v) {
  return (1 - u) * (1 - v) * c[0] + u * (1 - v) * c[1] + u * v * c[2] + (1 - u) * v * c[3];
}

// Height where `values` on column i first changes sign from negative to non-negative
// going up from the bottom after being negative; NaN if it never goes negative.
double column_zero_height(const WaveField& f, const std::vector<double>& values, std::size_t i) {
  const std::size_t rows = f.grid.rows();
  bool negative = false;
  for (std::size_t j = 0; j + 1 < rows; ++j) {
    const double a = values[i * rows + j];
    const double c = values[i * rows + j + 1];
    if (a < 0.0) negative = true;
    if (negative && a < 0.0 && c >= 0.0) {
      const double w = a / (a - c);
      return f.grid.y(j) + w * f.grid.dy();
    }
  }
  return kNaN;
}

}  // namespace

DiagnosticsReport find_stagnation(const WaveField& field, double b, const Discretization& disc) {
  if (!(b > 0.0)) throw RangeError("b must be positive");
  const std::size_t nx = field.grid.nx();
  const std::size_t rows = field.grid.rows();
  const double sb = std::sqrt(b);
  const auto d = field_derivatives(field, disc);

  DiagnosticsReport rep;
  rep.b = b;
  rep.grid_dx = field.grid.dx() / sb;

  double px_max = 0.0;
  double py_scale = 0.0;
  for (std::size_t n = 0; n < d.px.size(); ++n) {
    px_max = std::max(px_max, std::abs(d.px[n]));
    py_scale = std::max(py_scale, std::abs(d.py[n]));
  }
  rep.degenerate_laminar = px_max <= 1e-12 * std::max(1.0, py_scale);

  // Bottom: sign changes of the horizontal velocity psi_y(x, 0).
  std::vector<double> trace(nx);
  for (std::size_t i = 0; i < nx; ++i) trace[i] = d.py[i * rows];
  const std::size_t last = field.grid.periodic ? nx : nx - 1;
  for (std::size_t i = 0; i < last; ++i) {
    const double a = trace[i];
    const double c = trace[(i + 1) % nx];
    if (a == 0.0) {
      rep.bottom_stagnation.push_back(field.grid.x[i] / sb);
      continue;
    }
    if ((a < 0.0) == (c < 0.0) || c == 0.0) continue;
    double x = polish_bottom_root(field.grid.x, trace, i, field.grid.periodic, field.grid.period);
    if (field.grid.periodic && x >= field.grid.x.front() + field.grid.period) x -= field.grid.period;
    rep.bottom_stagnation.push_back(x / sb);
  }
  std::sort(rep.bottom_stagnation.begin(), rep.bottom_stagnation.end());

  if (rep.degenerate_laminar) return rep;

  // Interior: bilinear Newton for grad psi = 0 in cells where both components change sign.
  const double dy = field.grid.dy();
  const double dx = field.grid.dx();
  auto at = [&](const std::vector<double>& v, std::size_t i, std::size_t j) {
    return v[(i % nx) * rows + j];
  };
  for (std::size_t i = 0; i < last; ++i) {
    for (std::size_t j = 1; j + 1 < field.grid.ny; ++j) {
      const std::array<double, 4> fx{at(d.px, i, j), at(d.px, i + 1, j), at(d.px, i + 1, j + 1), at(d.px, i, j + 1)};
      const std::array<double, 4> fy{at(d.py, i, j), at(d.py, i + 1, j), at(d.py, i + 1, j + 1), at(d.py, i, j + 1)};
      auto changes = [](const std::array<double, 4>& c) {
        const double lo = std::min({c[0], c[1], c[2], c[3]});
        const double hi = std::max({c[0], c[1], c[2], c[3]});
        return lo <= 0.0 && hi >= 0.0;
      };
      if (!changes(fx) || !changes(fy)) continue;
      double u = 0.5;
      double v = 0.5;
      bool ok = false;
      for (int it = 0; it < 30; ++it) {
        const double gx = bilinear(fx, u, v);
        const double gy = bilinear(fy, u, v);
        const double a11 = (1 - v) * (fx[1] - fx[0]) + v * (fx[2] - fx[3]);
        const double a12 = (1 - u) * (fx[3] - fx[0]) + u * (fx[2] - fx[1]);
        const double a21 = (1 - v) * (fy[1] - fy[0]) + v * (fy[2] - fy[3]);
        const double a22 = (1 - u) * (fy[3] - fy[0]) + u * (fy[2] - fy[1]);
        const double det = a11 * a22 - a12 * a21;
        if (det == 0.0 || !std::isfinite(det)) break;
        const double du = (gx * a22 - gy * a12) / det;
        const double dv = (a11 * gy - a21 * gx) / det;
        u -= du;
        v -= dv;
        if (std::abs(du) + std::abs(dv) < 1e-13) {
          ok = true;
          break;
        }
      }
      const double slack = 1e-9;
      if (!ok || u < -slack || u > 1 + slack || v < -slack || v > 1 + slack) continue;
      u = std::clamp(u, 0.0, 1.0);
      v = std::clamp(v, 0.0, 1.0);
      Point p{field.grid.x[i] + u * dx, field.grid.y(j) + v * dy};
      if (field.grid.periodic && i + 1 == nx) p.x = field.grid.x[i] + u * dx;
      auto interp = [&](const std::vector<double>& w) {
        return bilinear({at(w, i, j), at(w, i + 1, j), at(w, i + 1, j + 1), at(w, i, j + 1)}, u, v);
      };
      const double hxx = interp(d.pxx);
      const double hxy = interp(d.pxy);
      const double hyy = interp(d.pyy);
      const double det = hxx * hyy - hxy * hxy;
      const bool dup = std::any_of(rep.interior_stagnation.begin(), rep.interior_stagnation.end(),
                                   [&](const StagnationPoint& q) {
                                     return std::abs(q.x - p.x) < 0.5 * dx && std::abs(q.y - p.y) < 0.5 * dy;
                                   });
      if (dup) continue;
      StagnationPoint sp;
      sp.x = p.x;
      sp.y = p.y;
      const Point P = to_physical_point(field, b, p);
      sp.X = P.x;
      sp.Y = P.y;
      sp.hessian_det = det;
      const double scale = std::max(hxx * hxx + hyy * hyy + 2 * hxy * hxy, 1e-300);
      sp.type = std::abs(det) <= 1e-10 * scale ? StagnationType::Degenerate
                : det > 0.0                   ? StagnationType::Center
                                              : StagnationType::Saddle;
      rep.interior_stagnation.push_back(sp);
    }
  }
  return rep;
}

void trace_structure(const WaveField& field, DiagnosticsReport& rep, const StructureOptions& options) {
  const double b = rep.b;
  const std::size_t nx = field.grid.nx();
  const std::size_t rows = field.grid.rows();
  const auto d = field_derivatives(field, options.disc);

  // Critical level: psi_y = 0.
  {
    const auto res = contour(grid_scalar(field, d.py), 0.0);
    rep.flagged_cells += res.flat_cells;
    rep.critical_level.clear();
    for (const auto& l : res.lines) rep.critical_level.push_back(to_physical_line(field, b, l));
  }

  // Critical streamline: zero set of psi / y (psi_y on the bottom), which
  // keeps the separatrix and drops the bottom itself.
  std::vector<double> g(field.hat_phi.size());
  for (std::size_t i = 0; i < nx; ++i) {
    g[i * rows] = d.py[i * rows];
    for (std::size_t j = 1; j < rows; ++j) g[i * rows + j] = field.phi(i, j) / field.grid.y(j);
  }
  rep.critical_streamline.clear();
  if (!rep.degenerate_laminar) {
    const auto res = contour(grid_scalar(field, g), 0.0);
    rep.flagged_cells += res.flat_cells;
    for (const auto& l : res.lines) rep.critical_streamline.push_back(to_physical_line(field, b, l));
  }

  // Crest column heights.
  rep.crest_level_height = kNaN;
  rep.crest_streamline_height = kNaN;
  std::size_t crest = 0;
  for (std::size_t i = 1; i < nx; ++i) {
    if (std::abs(field.grid.x[i]) < std::abs(field.grid.x[crest])) crest = i;
  }
  const double scale = field.eta_bar[crest] / field.grid.h / std::sqrt(b);
  rep.crest_level_height = column_zero_height(field, d.py, crest) * scale;
  if (!rep.degenerate_laminar) rep.crest_streamline_height = column_zero_height(field, g, crest) * scale;

  // Closed streamlines around the centre.
  rep.classification.clear();
  const StagnationPoint* centre = nullptr;
  for (const auto& sp : rep.interior_stagnation) {
    if (sp.type == StagnationType::Center) {
      centre = &sp;
      break;
    }
  }
  if (centre != nullptr && options.closed_levels > 0) {
    const Point c{centre->x, centre->y};
    const double psi_c = [&] {
      // Bilinear value of psi at the centre.
      const double dx = field.grid.dx();
      double t = (c.x - field.grid.x.front()) / dx;
      auto i0 = std::min(static_cast<std::size_t>(std::max(t, 0.0)), nx - 2);
      const double u = t - static_cast<double>(i0);
      auto j0 = std::min(static_cast<std::size_t>(c.y / field.grid.dy()), field.grid.ny - 1);
      const double v = c.y / field.grid.dy() - static_cast<double>(j0);
      return bilinear({field.phi(i0, j0), field.phi(i0 + 1, j0), field.phi(i0 + 1, j0 + 1), field.phi(i0, j0 + 1)}, u, v);
    }();
    const GridScalar psi = grid_scalar(field, field.hat_phi);
    const auto K = static_cast<double>(options.closed_levels + 1);
    for (std::size_t k = 1; k <= options.closed_levels; ++k) {
      StreamlineSample sample;
      sample.level = psi_c * static_cast<double>(k) / K;
      const auto res = contour(psi, sample.level);
      std::size_t loops = 0;
      bool stray = false;
      for (const auto& l : res.lines) {
        if (l.closed && encloses(l, c)) {
          ++loops;
          sample.points = l.points.size();
        } else {
          stray = true;
        }
      }
      sample.tag = loops == 1 && !stray && psi_c < 0.0 ? StreamlineTag::Closed : StreamlineTag::Unclassified;
      rep.classification.push_back(sample);
    }
  }

  // Streamlines in (0, 1): single crossing on every column.
  for (std::size_t m = 1; m <= options.upper_levels; ++m) {
    StreamlineSample sample;
    sample.level = static_cast<double>(m) / static_cast<double>(options.upper_levels + 1);
    bool ok = true;
    for (std::size_t i = 0; i < nx && ok; ++i) {
      std::size_t crossings = 0;
      for (std::size_t j = 0; j + 1 < rows; ++j) {
        const bool lo = field.phi(i, j) < sample.level;
        const bool hi = field.phi(i, j + 1) < sample.level;
        if (lo != hi) ++crossings;
      }
      ok = crossings == 1;
    }
    sample.tag = ok ? StreamlineTag::SurfaceDiffeomorphic : StreamlineTag::Unclassified;
    sample.points = nx;
    rep.classification.push_back(sample);
  }

  const auto s_bar = flow_force_scaled(field, options.disc);
  rep.flow_force.resize(s_bar.size());
  for (std::size_t i = 0; i < s_bar.size(); ++i) rep.flow_force[i] = std::sqrt(b) * s_bar[i];
  rep.flowforce_var = flow_force_variation(s_bar);
  rep.residuals = residual_report(field, options.disc);

  rep.min_elevation = *std::min_element(field.eta_bar.begin(), field.eta_bar.end()) / std::sqrt(b);
  rep.conjugate_depth = 0.0;
  try {
    const ConjugateFlow cf = conjugate_flow(field.flow.s, field.flow.gamma);
    if (!cf.degenerate) rep.conjugate_depth = cf.h / std::sqrt(b);
  } catch (const Error&) {
    rep.conjugate_depth = 0.0;
  }
  rep.open_domain = !field.grid.periodic;
  rep.far_field_depth = rep.open_domain
                            ? std::max(field.eta_bar.front(), field.eta_bar.back()) / std::sqrt(b)
                            : rep.conjugate_depth;
}

DiagnosticsReport diagnose(const WaveField& field, double b, const StructureOptions& options) {
  DiagnosticsReport rep = find_stagnation(field, b, options.disc);
  trace_structure(field, rep, options);
  return rep;
}

bool Certification::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CertificationCheck& c) { return c.passed; });
}

Certification certify(const DiagnosticsReport& rep, const CertifyOptions& options) {
  Certification cert;
  auto add = [&](std::string name, bool ok, std::string detail) {
    cert.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  auto fmt = [](auto... parts) {
    std::ostringstream os;
    os.precision(6);
    (os << ... << parts);
    return os.str();
  };
  const double step = rep.grid_dx;

  add("bottom_stagnation_count", rep.bottom_stagnation.size() == 2,
      fmt(rep.bottom_stagnation.size(), " bottom stagnation points"));

  std::size_t centres = 0;
  double centre_x = kNaN;
  for (const auto& sp : rep.interior_stagnation) {
    if (sp.type == StagnationType::Center) {
      ++centres;
      centre_x = sp.X;
    }
  }
  add("interior_center", centres == 1 && rep.interior_stagnation.size() == 1,
      fmt(rep.interior_stagnation.size(), " interior stagnation points, ", centres, " centers"));
  add("center_on_crest_line", centres == 1 && std::abs(centre_x) < options.crest_tolerance_steps * step,
      fmt("|X_center| = ", std::abs(centre_x), ", step = ", step));

  auto connects = [&](const std::vector<Polyline>& lines) {
    if (rep.bottom_stagnation.size() != 2) return false;
    const double tol = options.endpoint_tolerance_steps * step;
    for (const auto& l : lines) {
      if (l.closed || l.points.size() < 2) continue;
      const Point a = l.points.front();
      const Point z = l.points.back();
      auto near = [&](Point p, double X) { return std::abs(p.x - X) < tol && std::abs(p.y) < 1e-12; };
      const double x0 = rep.bottom_stagnation[0];
      const double x1 = rep.bottom_stagnation[1];
      if ((near(a, x0) && near(z, x1)) || (near(a, x1) && near(z, x0))) return true;
    }
    return false;
  };
  add("critical_streamline_connects", connects(rep.critical_streamline),
      fmt(rep.critical_streamline.size(), " zero-contour pieces"));
  add("critical_level_connects", connects(rep.critical_level),
      fmt(rep.critical_level.size(), " zero-contour pieces"));
  add("streamline_above_level",
      rep.crest_streamline_height > rep.crest_level_height,
      fmt("crest heights: streamline ", rep.crest_streamline_height, ", level ", rep.crest_level_height));

  std::size_t closed = 0;
  std::size_t closed_sampled = 0;
  std::size_t upper = 0;
  std::size_t upper_ok = 0;
  for (const auto& s : rep.classification) {
    if (s.level < 0.0) {
      ++closed_sampled;
      if (s.tag == StreamlineTag::Closed) ++closed;
    } else {
      ++upper;
      if (s.tag == StreamlineTag::SurfaceDiffeomorphic) ++upper_ok;
    }
  }
  add("closed_streamlines", closed >= options.min_closed && closed == closed_sampled,
      fmt(closed, " of ", closed_sampled, " sampled levels closed"));
  add("upper_streamlines_single_valued", upper > 0 && upper_ok == upper,
      fmt(upper_ok, " of ", upper, " levels cross every column once"));
  // On an open grid the end columns are the far state, so equality there is allowed.
  const bool elevated = rep.open_domain
                            ? rep.min_elevation >= rep.far_field_depth * (1.0 - 1e-12)
                            : rep.min_elevation > rep.far_field_depth;
  add("elevation_above_far_field", rep.far_field_depth > 0.0 && elevated,
      fmt("min eta = ", rep.min_elevation, ", far-field depth = ", rep.far_field_depth,
          rep.open_domain ? " (end columns)" : " (conjugate flow)"));
  return cert;
}

}  // namespace catseye
