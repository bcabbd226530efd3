#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "aisclass/cleaning.hpp"
#include "aisclass/dataset.hpp"
#include "aisclass/geo.hpp"
#include "aisclass/random.hpp"
#include "aisclass/segmentation.hpp"

namespace fixtures {

using namespace aisclass;

inline AisRecord record(std::uint32_t mmsi, std::int64_t t, double lat, double lon,
                        std::optional<ShipType> type = ShipType::cargo) {
  AisRecord r;
  r.mmsi = mmsi;
  r.timestamp = t;
  r.lat = lat;
  r.lon = lon;
  r.ship_type = type;
  r.nav_status = nav_status::under_way_engine;
  return r;
}

/// n points heading `course_deg` at `speed` m/s, one report every dt seconds,
/// starting at (lat0, lon0) and t0.
inline std::vector<AisRecord> straight(std::uint32_t mmsi, std::size_t n, double dt, double speed,
                                       double course_deg = 45.0,
                                       std::optional<ShipType> type = ShipType::cargo,
                                       std::int64_t t0 = 1'000'000, double lat0 = 55.0,
                                       double lon0 = 12.0) {
  const LocalFrame frame(lat0, lon0);
  const double c = deg2rad(course_deg);
  std::vector<AisRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = speed * dt * static_cast<double>(i);
    AisRecord r = record(mmsi, t0 + static_cast<std::int64_t>(dt * static_cast<double>(i)), 0, 0, type);
    frame.unproject({d * std::sin(c), d * std::cos(c)}, r.lat, r.lon);
    out.push_back(r);
  }
  return out;
}

inline Track make_track(std::vector<AisRecord> points) {
  Track t;
  t.mmsi = points.empty() ? 0 : points.front().mmsi;
  t.points = std::move(points);
  summarize(t);
  return t;
}

/// Kinematic points on a straight line in the plane.
inline std::vector<KinematicPoint> line_points(std::size_t n, double dt, double vx, double vy,
                                               double x0 = 0.0, double y0 = 0.0) {
  std::vector<KinematicPoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    KinematicPoint p;
    p.t = static_cast<std::int64_t>(dt * static_cast<double>(i));
    p.x = x0 + vx * dt * static_cast<double>(i);
    p.y = y0 + vy * dt * static_cast<double>(i);
    p.vx = vx;
    p.vy = vy;
    p.speed = std::hypot(vx, vy);
    p.course = course_from_velocity(vx, vy);
    pts.push_back(p);
  }
  return pts;
}

inline Segment make_segment(std::vector<KinematicPoint> pts, Label label = Label::non_fishing) {
  Segment s;
  s.mmsi = 219000001;
  s.label = label;
  s.ship_type = label == Label::fishing ? ShipType::fishing : ShipType::cargo;
  s.points = std::move(pts);
  return s;
}

/// Random dataset with `n_features` columns; labels follow `rule` when given.
template <typename Rule>
LabeledDataset random_dataset(std::size_t n, std::size_t n_features, std::uint64_t seed, Rule rule) {
  Rng rng(seed);
  LabeledDataset ds;
  for (std::size_t f = 0; f < n_features; ++f) ds.feature_names.push_back("f" + std::to_string(f));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n_features);
    for (auto& v : row) v = rng.uniform(-1.0, 1.0);
    const Label label = rule(row, rng);
    RowInfo info;
    info.ship_type = label == Label::fishing ? ShipType::fishing : ShipType::cargo;
    info.mmsi = static_cast<std::uint32_t>(219000000 + i);
    ds.add(std::move(row), label, info);
  }
  return ds;
}

}  // namespace fixtures
