#include "aisclass/pareto.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace aisclass {

bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) {
  return a.accuracy >= b.accuracy && a.f_measure >= b.f_measure &&
         (a.accuracy > b.accuracy || a.f_measure > b.f_measure);
}

std::vector<std::size_t> pareto_front_indices(std::span<const ObjectivePoint> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].accuracy != points[b].accuracy) return points[a].accuracy > points[b].accuracy;
    if (points[a].f_measure != points[b].f_measure) return points[a].f_measure > points[b].f_measure;
    return a < b;
  });
  // Sweeping by decreasing accuracy, a point survives only if it beats every
  // earlier point's F-measure.
  std::vector<std::size_t> front;
  double best_f = -std::numeric_limits<double>::infinity();
  for (std::size_t i : order) {
    if (points[i].f_measure > best_f) {
      front.push_back(i);
      best_f = points[i].f_measure;
    }
  }
  std::sort(front.begin(), front.end());
  return front;
}

std::vector<ObjectivePoint> pareto_front(std::span<const ObjectivePoint> points) {
  std::vector<ObjectivePoint> out;
  for (std::size_t i : pareto_front_indices(points)) out.push_back(points[i]);
  return out;
}

}  // namespace aisclass
