#pragma once

#include <cstdint>
#include <vector>

#include "aisclass/kinematics.hpp"

namespace aisclass {

struct Segment {
  std::uint32_t mmsi = 0;
  std::size_t index = 0;  // position within the parent track
  ShipType ship_type = ShipType::unknown;
  Label label = Label::non_fishing;
  StaticExtras extras;
  std::vector<KinematicPoint> points;

  friend bool operator==(const Segment&, const Segment&) = default;
};

inline constexpr std::size_t kDefaultSegmentLength = 50;

/// Non-overlapping windows of exactly `length` points; a trailing remainder
/// shorter than `length` is dropped. Requires a labeled track.
std::vector<Segment> segment_track(const KinematicTrack& track,
                                   std::size_t length = kDefaultSegmentLength);

/// The whole track as a single variable-length segment.
Segment whole_track_segment(const KinematicTrack& track);

}  // namespace aisclass
