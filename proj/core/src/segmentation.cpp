#include "aisclass/segmentation.hpp"

#include <stdexcept>

namespace aisclass {
namespace {

Segment make_segment(const KinematicTrack& track, std::size_t index) {
  if (track.cls == BinaryClass::unlabeled) {
    throw std::invalid_argument("cannot segment an unlabeled track");
  }
  Segment s;
  s.mmsi = track.mmsi;
  s.index = index;
  s.ship_type = track.ship_type.value_or(ShipType::unknown);
  s.label = track.cls == BinaryClass::fishing ? Label::fishing : Label::non_fishing;
  s.extras = track.extras;
  return s;
}

}  // namespace

std::vector<Segment> segment_track(const KinematicTrack& track, std::size_t length) {
  if (length < 2) throw std::invalid_argument("segment length must be at least 2");
  std::vector<Segment> out;
  const std::size_t count = track.points.size() / length;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Segment s = make_segment(track, k);
    const auto begin = track.points.begin() + static_cast<std::ptrdiff_t>(k * length);
    s.points.assign(begin, begin + static_cast<std::ptrdiff_t>(length));
    out.push_back(std::move(s));
  }
  return out;
}

Segment whole_track_segment(const KinematicTrack& track) {
  Segment s = make_segment(track, 0);
  s.points = track.points;
  return s;
}

}  // namespace aisclass
