#pragma once

namespace feedplan::plan {

/// 1 - (c_i - c*) / (c_max - c*): 1 at the best predicted cost, 0 at the worst.
/// c_i outside [c*, c_max] is clamped and reported through `clamped`.
/// Returns 1 when c_max <= c*.
double node_quality(double c_i, double c_star, double c_max, bool* clamped = nullptr);

}  // namespace feedplan::plan
