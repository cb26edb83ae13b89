#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "feedplan/geom/mesh.hpp"

namespace feedplan::geom {

enum class FoodKind { carrot, cantaloupe, celery, strawberry };

std::string_view to_string(FoodKind kind);
/// Throws InvalidSpecError for unknown names.
FoodKind food_kind_from_string(std::string_view name);

// All lengths in meters. The food's long axis is local +y.
struct CarrotDims {
  double radius = 0.008;
  double length = 0.05;
};
/// Trapezoid in the x-z plane (bottom at -z), extruded along y.
struct CantaloupeDims {
  double bottom_width = 0.035;
  double top_width = 0.02;
  double height = 0.02;
  double length = 0.04;
};
/// Half of a cylindrical tube (the z >= 0 half), closed at both ends.
/// wall_thickness == outer_radius gives a solid half-cylinder.
struct CeleryDims {
  double outer_radius = 0.012;
  double wall_thickness = 0.004;
  double length = 0.05;
};
/// Surface of revolution about y; pointed tip at -y, rounded at +y.
struct StrawberryDims {
  double radius = 0.015;
  double length = 0.035;
};

struct FoodSpec {
  std::variant<CarrotDims, CantaloupeDims, CeleryDims, StrawberryDims> dims = CarrotDims{};
  int segments = 32;

  FoodKind kind() const;
  /// Same kind, every length multiplied by `factor`.
  FoodSpec scaled(double factor) const;
  void validate() const;

  static FoodSpec default_for(FoodKind kind);
};

/// Watertight, outward-wound mesh centered at its volumetric centroid.
/// Curved outlines use an area-preserving polygon, so cross-sections keep the
/// analytic area at any segment count.
TriMesh make_food_mesh(const FoodSpec& spec);

// Building blocks shared with the robot proxy.
TriMesh make_box(const Eigen::Vector3d& size);
/// Cylinder along local +y, centered at the origin. `exact_area` scales the
/// polygon radius so the cross-section area equals pi r^2.
TriMesh make_cylinder(double radius, double length, int segments, bool exact_area = true);

}  // namespace feedplan::geom
