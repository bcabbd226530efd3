#pragma once

#include <span>
#include <vector>

namespace aisclass {

struct ObjectivePoint {
  double accuracy = 0.0;
  double f_measure = 0.0;
  friend bool operator==(const ObjectivePoint&, const ObjectivePoint&) = default;
};

/// True when `a` is at least as good as `b` on both objectives and strictly
/// better on one.
bool dominates(const ObjectivePoint& a, const ObjectivePoint& b);

/// Indices (ascending) of the non-dominated points, maximizing both
/// objectives. Duplicate points are kept once (first occurrence).
std::vector<std::size_t> pareto_front_indices(std::span<const ObjectivePoint> points);

std::vector<ObjectivePoint> pareto_front(std::span<const ObjectivePoint> points);

}  // namespace aisclass
