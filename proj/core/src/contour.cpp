#include "catseye/contour.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace catseye {

namespace {

// Edge keys: horizontal edges (i, j)-(i+1, j) and vertical edges (i, j)-(i, j+1).
std::uint64_t edge_key(bool vertical, std::size_t i, std::size_t j) {
  return (static_cast<std::uint64_t>(i) << 33) | (static_cast<std::uint64_t>(j) << 1) |
         (vertical ? 1u : 0u);
}

struct Segment {
  std::uint64_t a, b;
};

}  // namespace

ContourResult contour(const GridScalar& f, double level) {
  const std::size_t nx = f.x.size();
  const std::size_t ny = f.y.size();
  if (nx < 2 || ny < 2 || f.values.size() != nx * ny) throw std::invalid_argument("contour: bad grid");
  const std::size_t cells_x = f.periodic ? nx : nx - 1;
  const double dx_wrap = f.x[1] - f.x[0];

  auto xcol = [&](std::size_t i) { return i < nx ? f.x[i] : f.x.back() + dx_wrap; };
  auto value = [&](std::size_t i, std::size_t j) { return f.value(i % nx, j); };

  std::unordered_map<std::uint64_t, Point> crossing;
  auto edge_point = [&](bool vertical, std::size_t i, std::size_t j) {
    const std::uint64_t key = edge_key(vertical, i, j);
    if (crossing.find(key) == crossing.end()) {
      const double v0 = value(i, j);
      const double v1 = vertical ? value(i, j + 1) : value(i + 1, j);
      const double t = (level - v0) / (v1 - v0);
      Point p;
      if (vertical) {
        p = {xcol(i), f.y[j] + t * (f.y[j + 1] - f.y[j])};
      } else {
        p = {xcol(i) + t * (xcol(i + 1) - xcol(i)), f.y[j]};
      }
      crossing.emplace(key, p);
    }
    return key;
  };

  ContourResult out;
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < cells_x; ++i) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      // Corners counter-clockwise: (i,j), (i+1,j), (i+1,j+1), (i,j+1).
      const std::array<double, 4> v{value(i, j), value(i + 1, j), value(i + 1, j + 1), value(i, j + 1)};
      unsigned mask = 0;
      for (unsigned c = 0; c < 4; ++c) {
        if (v[c] > level) mask |= 1u << c;
      }
      if (mask == 0 || mask == 15) {
        if (v[0] == level && v[1] == level && v[2] == level && v[3] == level) ++out.flat_cells;
        continue;
      }
      // Edges: 0 bottom, 1 right, 2 top, 3 left.
      auto e = [&](int k) {
        switch (k) {
          case 0: return edge_point(false, i, j);
          case 1: return edge_point(true, i + 1, j);
          case 2: return edge_point(false, i, j + 1);
          default: return edge_point(true, i, j);
        }
      };
      auto seg = [&](int p, int q) { segs.push_back({e(p), e(q)}); };
      switch (mask) {
        case 1: case 14: seg(3, 0); break;
        case 2: case 13: seg(0, 1); break;
        case 3: case 12: seg(3, 1); break;
        case 4: case 11: seg(1, 2); break;
        case 6: case 9: seg(0, 2); break;
        case 7: case 8: seg(2, 3); break;
        case 5: case 10: {
          ++out.ambiguous_cells;
          const bool centre_high = 0.25 * (v[0] + v[1] + v[2] + v[3]) > level;
          // Corners 0 and 2 share a side for mask 5; centre decides connectivity.
          if ((mask == 5) == centre_high) {
            seg(3, 2);
            seg(0, 1);
          } else {
            seg(3, 0);
            seg(1, 2);
          }
          break;
        }
        default: break;
      }
    }
  }

  // Stitch: every edge point is shared by at most two segments.
  std::unordered_map<std::uint64_t, std::array<long, 2>> adj;
  adj.reserve(segs.size() * 2);
  for (std::size_t s = 0; s < segs.size(); ++s) {
    for (std::uint64_t k : {segs[s].a, segs[s].b}) {
      auto [it, fresh] = adj.try_emplace(k, std::array<long, 2>{-1, -1});
      (void)fresh;
      if (it->second[0] < 0) it->second[0] = static_cast<long>(s);
      else it->second[1] = static_cast<long>(s);
    }
  }
  std::vector<bool> used(segs.size(), false);
  auto other = [&](std::uint64_t key, long s) {
    const auto& a = adj.at(key);
    return a[0] == s ? a[1] : a[0];
  };
  auto walk = [&](long s, std::uint64_t from, std::vector<std::uint64_t>& chain) {
    std::uint64_t at = from;
    while (s >= 0 && !used[static_cast<std::size_t>(s)]) {
      used[static_cast<std::size_t>(s)] = true;
      const Segment& sg = segs[static_cast<std::size_t>(s)];
      at = sg.a == at ? sg.b : sg.a;
      chain.push_back(at);
      s = other(at, s);
    }
    return at;
  };

  // Open chains first (start at an endpoint), then loops; order follows the scan.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
      if (used[s0]) continue;
      const Segment& sg = segs[s0];
      std::uint64_t start;
      if (pass == 0) {
        if (other(sg.a, static_cast<long>(s0)) < 0) start = sg.a;
        else if (other(sg.b, static_cast<long>(s0)) < 0) start = sg.b;
        else continue;
      } else {
        start = sg.a;
      }
      std::vector<std::uint64_t> chain{start};
      const std::uint64_t end = walk(static_cast<long>(s0), start, chain);
      Polyline line;
      line.closed = pass == 1 && end == start;
      if (line.closed) chain.pop_back();
      line.points.reserve(chain.size());
      for (std::uint64_t k : chain) line.points.push_back(crossing.at(k));
      out.lines.push_back(std::move(line));
    }
  }
  return out;
}

bool encloses(const Polyline& loop, Point p) {
  bool inside = false;
  const auto& v = loop.points;
  for (std::size_t a = 0, b = v.size() - 1; a < v.size(); b = a++) {
    if ((v[a].y > p.y) != (v[b].y > p.y)) {
      const double xc = v[b].x + (p.y - v[b].y) * (v[a].x - v[b].x) / (v[a].y - v[b].y);
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

}  // namespace catseye
