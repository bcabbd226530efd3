#include "aisclass/kinematics.hpp"

#include <cmath>

#include "aisclass/geo.hpp"

namespace aisclass {

double course_from_velocity(double vx, double vy) {
  return wrap_deg_360(rad2deg(std::atan2(vx, vy)));
}

KinematicTrack raw_kinematics(const Track& track) {
  KinematicTrack out;
  out.mmsi = track.mmsi;
  out.ship_type = track.ship_type;
  out.cls = track.cls;
  out.extras = track.extras;
  out.source = KinematicSource::raw;
  if (track.points.empty()) return out;

  const LocalFrame frame(track.points.front().lat, track.points.front().lon);
  out.origin_lat = frame.origin_lat();
  out.origin_lon = frame.origin_lon();
  out.points.reserve(track.points.size());
  for (const auto& r : track.points) {
    const auto p = frame.project(r.lat, r.lon);
    KinematicPoint k;
    k.t = r.timestamp;
    k.x = p.x;
    k.y = p.y;
    out.points.push_back(k);
  }
  auto& pts = out.points;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double dt = static_cast<double>(pts[i].t - pts[i - 1].t);
    pts[i].vx = (pts[i].x - pts[i - 1].x) / dt;
    pts[i].vy = (pts[i].y - pts[i - 1].y) / dt;
  }
  if (pts.size() > 1) {
    pts[0].vx = pts[1].vx;
    pts[0].vy = pts[1].vy;
  }
  for (auto& k : pts) {
    k.speed = std::hypot(k.vx, k.vy);
    k.course = course_from_velocity(k.vx, k.vy);
  }
  return out;
}

}  // namespace aisclass
