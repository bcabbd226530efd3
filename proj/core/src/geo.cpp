#include "aisclass/geo.hpp"

#include <algorithm>
#include <cmath>

namespace aisclass {

double haversine_m(double lat1, double lon1, double lat2, double lon2) {
  const double p1 = deg2rad(lat1);
  const double p2 = deg2rad(lat2);
  const double dp = p2 - p1;
  const double dl = deg2rad(lon2 - lon1);
  const double a = std::sin(dp / 2) * std::sin(dp / 2) +
                   std::cos(p1) * std::cos(p2) * std::sin(dl / 2) * std::sin(dl / 2);
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(a)));
}

double wrap_deg_180(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r <= -180.0) r += 360.0;
  if (r > 180.0) r -= 360.0;
  return r;
}

double wrap_deg_360(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r -= 360.0;
  return r;
}

LocalFrame::LocalFrame(double origin_lat, double origin_lon, double earth_radius)
    : origin_lat_(origin_lat),
      origin_lon_(origin_lon),
      radius_(earth_radius),
      cos_lat0_(std::cos(deg2rad(origin_lat))) {}

PlanePoint LocalFrame::project(double lat, double lon) const {
  const double dlon = wrap_deg_180(lon - origin_lon_);
  return {radius_ * deg2rad(dlon) * cos_lat0_, radius_ * deg2rad(lat - origin_lat_)};
}

void LocalFrame::unproject(PlanePoint p, double& lat, double& lon) const {
  lat = origin_lat_ + rad2deg(p.y / radius_);
  lon = origin_lon_ + rad2deg(p.x / (radius_ * cos_lat0_));
  if (lon > 180.0) lon -= 360.0;
  if (lon < -180.0) lon += 360.0;
}

}  // namespace aisclass
