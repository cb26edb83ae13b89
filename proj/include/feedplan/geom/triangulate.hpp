#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

namespace feedplan::geom {

/// Ear-clipping triangulation of a simple polygon. Returned triangles index
/// into `polygon` and follow the polygon's own winding, so they reuse every
/// boundary edge in the same direction. Falls back to a fan when no ear can be
/// found (degenerate or self-touching input); the fan still has the right
/// signed area.
std::vector<std::array<int, 3>> triangulate_polygon(const std::vector<Eigen::Vector2d>& polygon);

double signed_area(const std::vector<Eigen::Vector2d>& polygon);

}  // namespace feedplan::geom
