#include "feedplan/plan/quality.hpp"

#include <algorithm>

namespace feedplan::plan {

double node_quality(double c_i, double c_star, double c_max, bool* clamped) {
  if (clamped) *clamped = false;
  if (!(c_max > c_star)) return 1.0;
  if (c_i < c_star || c_i > c_max) {
    if (clamped) *clamped = true;
    c_i = std::clamp(c_i, c_star, c_max);
  }
  return std::clamp(1.0 - (c_i - c_star) / (c_max - c_star), 0.0, 1.0);
}

}  // namespace feedplan::plan
