#pragma once

namespace aisclass {

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Great-circle distance in meters on a spherical earth.
double haversine_m(double lat1, double lon1, double lat2, double lon2);

/// Wraps an angle difference in degrees to (-180, 180].
double wrap_deg_180(double deg);
/// Wraps an angle in degrees to [0, 360).
double wrap_deg_360(double deg);

struct PlanePoint {
  double x = 0.0;  // east, m
  double y = 0.0;  // north, m
};

/// Equirectangular tangent plane anchored at a track's first point.
class LocalFrame {
 public:
  LocalFrame(double origin_lat, double origin_lon, double earth_radius = kEarthRadiusM);

  PlanePoint project(double lat, double lon) const;
  void unproject(PlanePoint p, double& lat, double& lon) const;

  double origin_lat() const { return origin_lat_; }
  double origin_lon() const { return origin_lon_; }
  double earth_radius() const { return radius_; }

 private:
  double origin_lat_;
  double origin_lon_;
  double radius_;
  double cos_lat0_;
};

}  // namespace aisclass
