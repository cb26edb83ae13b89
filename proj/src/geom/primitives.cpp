#include "feedplan/geom/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "feedplan/error.hpp"
#include "feedplan/geom/triangulate.hpp"

namespace feedplan::geom {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidSpecError(std::string(what) + " must be positive, got " + std::to_string(value));
  }
}

// Radius correction that makes a regular n-gon enclose the circle's area.
double area_preserving_scale(int segments) {
  const double n = segments;
  return std::sqrt(2.0 * kPi / (n * std::sin(2.0 * kPi / n)));
}

void orient_outward(TriMesh& mesh) {
  if (signed_volume(mesh) < 0.0) {
    for (Face& f : mesh.faces) std::swap(f[1], f[2]);
  }
}

void recenter(TriMesh& mesh) {
  const Eigen::Vector3d c = volume_centroid(mesh);
  for (auto& v : mesh.vertices) v -= c;
}

// Profile lives in the (x, z) plane; extruded symmetrically along y.
TriMesh extrude(const std::vector<Eigen::Vector2d>& profile, double length) {
  const int n = static_cast<int>(profile.size());
  TriMesh mesh;
  mesh.vertices.reserve(2 * n);
  for (const auto& p : profile) mesh.vertices.emplace_back(p.x(), -0.5 * length, p.y());
  for (const auto& p : profile) mesh.vertices.emplace_back(p.x(), 0.5 * length, p.y());

  for (const auto& t : triangulate_polygon(profile)) {
    mesh.faces.push_back({n + t[0], n + t[1], n + t[2]});
    mesh.faces.push_back({t[2], t[1], t[0]});
  }
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    mesh.faces.push_back({i, j, n + j});
    mesh.faces.push_back({i, n + j, n + i});
  }
  orient_outward(mesh);
  return mesh;
}

std::vector<Eigen::Vector2d> circle(double radius, int segments) {
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(segments);
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * kPi * i / segments;
    pts.emplace_back(radius * std::cos(a), radius * std::sin(a));
  }
  return pts;
}

TriMesh make_celery(const CeleryDims& d, int segments) {
  const int arc = std::max(2, segments / 2);
  // Area-preserving correction for a half-disk sampled with `arc` intervals.
  const double theta = kPi / arc;
  const double scale = std::sqrt(theta / std::sin(theta));
  const double outer = d.outer_radius * scale;
  const double inner = (d.outer_radius - d.wall_thickness) * scale;

  std::vector<Eigen::Vector2d> profile;
  for (int i = 0; i <= arc; ++i) {
    const double a = kPi * i / arc;
    profile.emplace_back(outer * std::cos(a), outer * std::sin(a));
  }
  if (d.wall_thickness < d.outer_radius) {
    for (int i = arc; i >= 0; --i) {
      const double a = kPi * i / arc;
      profile.emplace_back(inner * std::cos(a), inner * std::sin(a));
    }
  }
  return extrude(profile, d.length);
}

TriMesh make_strawberry(const StrawberryDims& d, int segments) {
  const int rings = std::max(4, segments / 2);
  // Teardrop profile: axial u = (1 - cos t) / 2, radius ~ sin t * sin(t / 2).
  auto shape = [](double t) { return std::sin(t) * std::sin(0.5 * t); };
  double peak = 0.0;
  for (int i = 0; i <= 2000; ++i) peak = std::max(peak, shape(kPi * i / 2000.0));
  const double radial = d.radius / peak * area_preserving_scale(segments);

  TriMesh mesh;
  mesh.vertices.emplace_back(0.0, 0.0, 0.0);  // tip pole
  for (int k = 1; k < rings; ++k) {
    const double t = kPi * k / rings;
    const double y = d.length * 0.5 * (1.0 - std::cos(t));
    const double r = radial * shape(t);
    for (int s = 0; s < segments; ++s) {
      const double a = 2.0 * kPi * s / segments;
      mesh.vertices.emplace_back(r * std::cos(a), y, r * std::sin(a));
    }
  }
  const int top = static_cast<int>(mesh.vertices.size());
  mesh.vertices.emplace_back(0.0, d.length, 0.0);

  auto ring_index = [&](int k, int s) { return 1 + (k - 1) * segments + (s % segments); };
  for (int s = 0; s < segments; ++s) mesh.faces.push_back({0, ring_index(1, s + 1), ring_index(1, s)});
  for (int k = 1; k + 1 < rings; ++k) {
    for (int s = 0; s < segments; ++s) {
      const int a = ring_index(k, s), b = ring_index(k, s + 1);
      const int c = ring_index(k + 1, s), e = ring_index(k + 1, s + 1);
      mesh.faces.push_back({a, b, e});
      mesh.faces.push_back({a, e, c});
    }
  }
  for (int s = 0; s < segments; ++s) {
    mesh.faces.push_back({top, ring_index(rings - 1, s), ring_index(rings - 1, s + 1)});
  }
  orient_outward(mesh);
  return mesh;
}

}  // namespace

std::string_view to_string(FoodKind kind) {
  switch (kind) {
    case FoodKind::carrot: return "carrot";
    case FoodKind::cantaloupe: return "cantaloupe";
    case FoodKind::celery: return "celery";
    case FoodKind::strawberry: return "strawberry";
  }
  return "unknown";
}

FoodKind food_kind_from_string(std::string_view name) {
  for (FoodKind k : {FoodKind::carrot, FoodKind::cantaloupe, FoodKind::celery, FoodKind::strawberry}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidSpecError("unknown food kind '" + std::string(name) + "'");
}

FoodKind FoodSpec::kind() const {
  return std::visit(Overloaded{
                        [](const CarrotDims&) { return FoodKind::carrot; },
                        [](const CantaloupeDims&) { return FoodKind::cantaloupe; },
                        [](const CeleryDims&) { return FoodKind::celery; },
                        [](const StrawberryDims&) { return FoodKind::strawberry; },
                    },
                    dims);
}

FoodSpec FoodSpec::scaled(double factor) const {
  FoodSpec out = *this;
  std::visit(Overloaded{
                 [&](CarrotDims& d) { d.radius *= factor; d.length *= factor; },
                 [&](CantaloupeDims& d) {
                   d.bottom_width *= factor; d.top_width *= factor;
                   d.height *= factor; d.length *= factor;
                 },
                 [&](CeleryDims& d) {
                   d.outer_radius *= factor; d.wall_thickness *= factor; d.length *= factor;
                 },
                 [&](StrawberryDims& d) { d.radius *= factor; d.length *= factor; },
             },
             out.dims);
  return out;
}

void FoodSpec::validate() const {
  if (segments < 8) throw InvalidSpecError("tessellation needs at least 8 segments");
  std::visit(Overloaded{
                 [](const CarrotDims& d) {
                   require_positive(d.radius, "carrot radius");
                   require_positive(d.length, "carrot length");
                 },
                 [](const CantaloupeDims& d) {
                   require_positive(d.bottom_width, "cantaloupe bottom_width");
                   require_positive(d.top_width, "cantaloupe top_width");
                   require_positive(d.height, "cantaloupe height");
                   require_positive(d.length, "cantaloupe length");
                 },
                 [](const CeleryDims& d) {
                   require_positive(d.outer_radius, "celery outer_radius");
                   require_positive(d.wall_thickness, "celery wall_thickness");
                   require_positive(d.length, "celery length");
                   if (d.wall_thickness > d.outer_radius) {
                     throw InvalidSpecError("celery wall_thickness exceeds outer_radius");
                   }
                 },
                 [](const StrawberryDims& d) {
                   require_positive(d.radius, "strawberry radius");
                   require_positive(d.length, "strawberry length");
                 },
             },
             dims);
}

FoodSpec FoodSpec::default_for(FoodKind kind) {
  FoodSpec spec;
  switch (kind) {
    case FoodKind::carrot: spec.dims = CarrotDims{}; break;
    case FoodKind::cantaloupe: spec.dims = CantaloupeDims{}; break;
    case FoodKind::celery: spec.dims = CeleryDims{}; break;
    case FoodKind::strawberry: spec.dims = StrawberryDims{}; break;
  }
  return spec;
}

TriMesh make_box(const Eigen::Vector3d& size) {
  const Eigen::Vector3d h = 0.5 * size;
  TriMesh m;
  for (int i = 0; i < 8; ++i) {
    m.vertices.emplace_back((i & 1) ? h.x() : -h.x(), (i & 2) ? h.y() : -h.y(),
                            (i & 4) ? h.z() : -h.z());
  }
  m.faces = {{0, 2, 3}, {0, 3, 1}, {4, 5, 7}, {4, 7, 6}, {0, 1, 5}, {0, 5, 4},
             {2, 6, 7}, {2, 7, 3}, {0, 4, 6}, {0, 6, 2}, {1, 3, 7}, {1, 7, 5}};
  orient_outward(m);
  return m;
}

TriMesh make_cylinder(double radius, double length, int segments, bool exact_area) {
  const double r = exact_area ? radius * area_preserving_scale(segments) : radius;
  return extrude(circle(r, segments), length);
}

TriMesh make_food_mesh(const FoodSpec& spec) {
  spec.validate();
  TriMesh mesh = std::visit(
      Overloaded{
          [&](const CarrotDims& d) { return make_cylinder(d.radius, d.length, spec.segments); },
          [&](const CantaloupeDims& d) {
            const double hb = 0.5 * d.bottom_width, ht = 0.5 * d.top_width, hh = 0.5 * d.height;
            std::vector<Eigen::Vector2d> trapezoid = {{-hb, -hh}, {hb, -hh}, {ht, hh}, {-ht, hh}};
            return extrude(trapezoid, d.length);
          },
          [&](const CeleryDims& d) { return make_celery(d, spec.segments); },
          [&](const StrawberryDims& d) { return make_strawberry(d, spec.segments); },
      },
      spec.dims);
  recenter(mesh);
  return mesh;
}

}  // namespace feedplan::geom
