#include "feedplan/geom/triangulate.hpp"

#include <list>

namespace feedplan::geom {

namespace {

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Closed triangle test, sign-normalized so the triangle is counter-clockwise.
bool inside_triangle(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                     const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return cross2(a, b, p) >= 0.0 && cross2(b, c, p) >= 0.0 && cross2(c, a, p) >= 0.0;
}

}  // namespace

double signed_area(const std::vector<Eigen::Vector2d>& polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = polygon[i];
    const auto& q = polygon[(i + 1) % n];
    twice += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * twice;
}

std::vector<std::array<int, 3>> triangulate_polygon(const std::vector<Eigen::Vector2d>& polygon) {
  std::vector<std::array<int, 3>> tris;
  const int n = static_cast<int>(polygon.size());
  if (n < 3) return tris;
  tris.reserve(n - 2);

  // Work on a counter-clockwise copy of the coordinates; indices keep the
  // caller's order so the emitted winding matches theirs.
  const double orient = signed_area(polygon) >= 0.0 ? 1.0 : -1.0;
  auto pt = [&](int i) -> Eigen::Vector2d {
    return Eigen::Vector2d(polygon[i].x(), orient * polygon[i].y());
  };

  std::list<int> ring;
  for (int i = 0; i < n; ++i) ring.push_back(i);

  auto next_it = [&](std::list<int>::iterator it) {
    ++it;
    return it == ring.end() ? ring.begin() : it;
  };
  auto prev_it = [&](std::list<int>::iterator it) {
    if (it == ring.begin()) it = ring.end();
    return --it;
  };

  auto is_ear = [&](std::list<int>::iterator it, bool allow_flat) {
    const int ip = *prev_it(it), ic = *it, in = *next_it(it);
    const Eigen::Vector2d a = pt(ip), b = pt(ic), c = pt(in);
    const double turn = cross2(a, b, c);
    if (allow_flat ? turn < 0.0 : turn <= 0.0) return false;
    if (turn == 0.0) return true;
    for (int j : ring) {
      if (j == ip || j == ic || j == in) continue;
      const Eigen::Vector2d p = pt(j);
      if (p == a || p == b || p == c) continue;
      if (inside_triangle(p, a, b, c)) return false;
    }
    return true;
  };

  while (ring.size() > 3) {
    bool clipped = false;
    for (int pass = 0; pass < 2 && !clipped; ++pass) {
      for (auto it = ring.begin(); it != ring.end(); ++it) {
        if (is_ear(it, pass == 1)) {
          tris.push_back({*prev_it(it), *it, *next_it(it)});
          ring.erase(it);
          clipped = true;
          break;
        }
      }
    }
    if (!clipped) {
      // No ear: fan whatever is left from its first vertex.
      auto it = ring.begin();
      const int root = *it++;
      int prev = *it++;
      for (; it != ring.end(); ++it) {
        tris.push_back({root, prev, *it});
        prev = *it;
      }
      return tris;
    }
  }
  auto it = ring.begin();
  const int a = *it++;
  const int b = *it++;
  tris.push_back({a, b, *it});
  return tris;
}

}  // namespace feedplan::geom
