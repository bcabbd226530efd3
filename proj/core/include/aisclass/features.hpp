#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aisclass/segmentation.hpp"

namespace aisclass {

/// Kinematic series of one segment. Per-step series have one entry fewer
/// than the segment has points.
struct SeriesSet {
  std::vector<double> course_variation;  // deg per step, (-180, 180]
  std::vector<double> distance;          // m per step
  std::vector<double> speed;             // m/s per point
  std::vector<double> speed_variation;   // m/s per step
  std::vector<double> time_gap;          // s per step
};

SeriesSet derive_series(const Segment& segment);

struct Stats8 {
  double mean = 0.0;
  double max = 0.0;
  double mode = 0.0;
  double min = 0.0;
  double std = 0.0;  // population
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
};

/// Quartiles interpolate order statistics at h = (n-1)p. The mode is taken
/// after rounding to `mode_resolution`, ties to the smallest value.
/// Throws std::invalid_argument on an empty series.
Stats8 stats8(std::span<const double> series, double mode_resolution = 0.1);

enum class FeatureMode : std::uint8_t { full_44, kinematic_41, reduced_13 };

std::string_view to_string(FeatureMode mode);
FeatureMode parse_feature_mode(std::string_view text);

/// Series and statistic vocabulary used in feature names
/// ("<series>_<statistic>").
inline constexpr std::string_view kSeriesNames[] = {"course_variation", "distance", "speed",
                                                    "speed_variation", "time_gap"};
inline constexpr std::string_view kStatNames[] = {"mean", "max", "mode", "min",
                                                  "std",  "q1",  "q2",   "q3"};
inline constexpr std::string_view kTotalTime = "total_time";
inline constexpr std::string_view kExtraNames[] = {"nav_status", "length", "width"};

/// Stable, ordered feature names: total_time, then the 5x8 series
/// statistics, then the static extras (full_44 only). reduced_13 keeps
/// total_time plus {course_variation, speed} x {mean, max, std, q1, q2, q3}.
const std::vector<std::string>& feature_names(FeatureMode mode);

struct FeatureVector {
  FeatureMode mode = FeatureMode::full_44;
  std::vector<double> values;
  Label label = Label::non_fishing;
  ShipType ship_type = ShipType::unknown;
  std::uint32_t mmsi = 0;
  std::size_t segment = 0;
};

struct FeatureConfig {
  double mode_resolution = 0.1;
};

/// Absent extras are folded into the value: nav_status -1, length/width 0.
FeatureVector extract(const Segment& segment, FeatureMode mode, const FeatureConfig& cfg = {});

}  // namespace aisclass
