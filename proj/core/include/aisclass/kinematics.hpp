#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "aisclass/cleaning.hpp"
#include "aisclass/types.hpp"

namespace aisclass {

enum class KinematicSource : std::uint8_t { imm, raw };

/// Per-point kinematics in the track's local plane.
struct KinematicPoint {
  std::int64_t t = 0;
  double x = 0.0;   // m east of the track origin
  double y = 0.0;   // m north of the track origin
  double vx = 0.0;  // m/s
  double vy = 0.0;  // m/s
  double speed = 0.0;   // m/s
  double course = 0.0;  // degrees clockwise from north, [0, 360)
  std::array<double, 2> mode_prob{1.0, 0.0};

  friend bool operator==(const KinematicPoint&, const KinematicPoint&) = default;
};

/// A cleaned track after filtering (or after raw finite differencing when
/// filtering is disabled).
struct KinematicTrack {
  std::uint32_t mmsi = 0;
  std::optional<ShipType> ship_type;
  BinaryClass cls = BinaryClass::unlabeled;
  StaticExtras extras;
  double origin_lat = 0.0;
  double origin_lon = 0.0;
  KinematicSource source = KinematicSource::imm;
  std::size_t underflow_steps = 0;
  std::vector<KinematicPoint> points;

  friend bool operator==(const KinematicTrack&, const KinematicTrack&) = default;
};

using FilteredTrack = KinematicTrack;

/// Course in degrees clockwise from north for a planar velocity.
double course_from_velocity(double vx, double vy);

/// Unfiltered kinematics: projected positions, velocity by backward
/// differences (forward difference at the first point).
KinematicTrack raw_kinematics(const Track& track);

}  // namespace aisclass
