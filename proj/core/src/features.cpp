#include "aisclass/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "aisclass/geo.hpp"

namespace aisclass {
namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

bool in_reduced(std::string_view series, std::string_view stat) {
  return (series == "speed" || series == "course_variation") && stat != "min" && stat != "mode";
}

std::vector<std::string> build_names(FeatureMode mode) {
  std::vector<std::string> names;
  names.emplace_back(kTotalTime);
  for (auto series : kSeriesNames) {
    for (auto stat : kStatNames) {
      if (mode == FeatureMode::reduced_13 && !in_reduced(series, stat)) continue;
      names.push_back(std::string(series) + "_" + std::string(stat));
    }
  }
  if (mode == FeatureMode::full_44) {
    for (auto extra : kExtraNames) names.emplace_back(extra);
  }
  return names;
}

}  // namespace

SeriesSet derive_series(const Segment& segment) {
  const auto& pts = segment.points;
  SeriesSet s;
  s.speed.reserve(pts.size());
  for (const auto& p : pts) s.speed.push_back(p.speed);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const auto& a = pts[i - 1];
    const auto& b = pts[i];
    s.course_variation.push_back(wrap_deg_180(b.course - a.course));
    s.distance.push_back(std::hypot(b.x - a.x, b.y - a.y));
    s.speed_variation.push_back(b.speed - a.speed);
    s.time_gap.push_back(static_cast<double>(b.t - a.t));
  }
  return s;
}

Stats8 stats8(std::span<const double> series, double mode_resolution) {
  if (series.empty()) throw std::invalid_argument("stats8 of an empty series");
  if (!(mode_resolution > 0)) throw std::invalid_argument("mode_resolution must be positive");
  const auto n = static_cast<double>(series.size());

  Stats8 st;
  st.mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : series) ss += (v - st.mean) * (v - st.mean);
  st.std = std::sqrt(ss / n);

  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());
  st.min = sorted.front();
  st.max = sorted.back();
  st.q1 = quantile_sorted(sorted, 0.25);
  st.q2 = quantile_sorted(sorted, 0.5);
  st.q3 = quantile_sorted(sorted, 0.75);

  std::map<long long, std::size_t> bins;
  for (double v : sorted) ++bins[std::llround(v / mode_resolution)];
  auto best = bins.begin();
  for (auto it = bins.begin(); it != bins.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  st.mode = static_cast<double>(best->first) * mode_resolution;
  return st;
}

std::string_view to_string(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::full_44: return "full_44";
    case FeatureMode::kinematic_41: return "kinematic_41";
    case FeatureMode::reduced_13: return "reduced_13";
  }
  return "full_44";
}

FeatureMode parse_feature_mode(std::string_view text) {
  if (text == "full_44") return FeatureMode::full_44;
  if (text == "kinematic_41") return FeatureMode::kinematic_41;
  if (text == "reduced_13") return FeatureMode::reduced_13;
  throw std::invalid_argument("unknown feature mode: " + std::string(text));
}

const std::vector<std::string>& feature_names(FeatureMode mode) {
  static const std::vector<std::string> full = build_names(FeatureMode::full_44);
  static const std::vector<std::string> kinematic = build_names(FeatureMode::kinematic_41);
  static const std::vector<std::string> reduced = build_names(FeatureMode::reduced_13);
  switch (mode) {
    case FeatureMode::full_44: return full;
    case FeatureMode::kinematic_41: return kinematic;
    case FeatureMode::reduced_13: return reduced;
  }
  return full;
}

FeatureVector extract(const Segment& segment, FeatureMode mode, const FeatureConfig& cfg) {
  if (segment.points.size() < 2) throw std::invalid_argument("segment needs at least 2 points");
  const SeriesSet series = derive_series(segment);
  const std::vector<double>* by_name[] = {&series.course_variation, &series.distance,
                                          &series.speed, &series.speed_variation,
                                          &series.time_gap};

  FeatureVector fv;
  fv.mode = mode;
  fv.label = segment.label;
  fv.ship_type = segment.ship_type;
  fv.mmsi = segment.mmsi;
  fv.segment = segment.index;

  fv.values.push_back(static_cast<double>(segment.points.back().t - segment.points.front().t));
  for (std::size_t s = 0; s < std::size(kSeriesNames); ++s) {
    const Stats8 st = stats8(*by_name[s], cfg.mode_resolution);
    const double stat_values[] = {st.mean, st.max, st.mode, st.min, st.std, st.q1, st.q2, st.q3};
    for (std::size_t k = 0; k < std::size(kStatNames); ++k) {
      if (mode == FeatureMode::reduced_13 && !in_reduced(kSeriesNames[s], kStatNames[k])) continue;
      fv.values.push_back(stat_values[k]);
    }
  }
  if (mode == FeatureMode::full_44) {
    fv.values.push_back(segment.extras.nav_status ? *segment.extras.nav_status : -1.0);
    fv.values.push_back(segment.extras.length.value_or(0.0));
    fv.values.push_back(segment.extras.width.value_or(0.0));
  }
  return fv;
}

}  // namespace aisclass
