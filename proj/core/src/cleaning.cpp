#include "aisclass/cleaning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "aisclass/errors.hpp"
#include "aisclass/geo.hpp"

namespace aisclass {
namespace {

template <typename T>
std::optional<T> modal(const std::vector<T>& values) {
  if (values.empty()) return std::nullopt;
  std::map<T, std::size_t> counts;
  for (const auto& v : values) ++counts[v];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

double implied_speed(const AisRecord& a, const AisRecord& b) {
  const double dt = static_cast<double>(b.timestamp - a.timestamp);
  const double d = haversine_m(a.lat, a.lon, b.lat, b.lon);
  return dt > 0 ? d / dt : std::numeric_limits<double>::infinity();
}

// Cuts `points` at gaps above max_gap_s and appends fragments of at least
// min_points to `out`, each summarized.
void cut_at_gaps(std::uint32_t mmsi, const std::vector<AisRecord>& points,
                 const CleaningConfig& cfg, std::vector<Track>& out) {
  std::size_t start = 0;
  auto emit = [&](std::size_t begin, std::size_t end) {
    if (end - begin < cfg.min_points) return;
    Track t;
    t.mmsi = mmsi;
    t.points.assign(points.begin() + static_cast<std::ptrdiff_t>(begin),
                    points.begin() + static_cast<std::ptrdiff_t>(end));
    summarize(t);
    out.push_back(std::move(t));
  };
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (static_cast<double>(points[i].timestamp - points[i - 1].timestamp) > cfg.max_gap_s) {
      emit(start, i);
      start = i;
    }
  }
  emit(start, points.size());
}

bool track_order(const Track& a, const Track& b) {
  if (a.mmsi != b.mmsi) return a.mmsi < b.mmsi;
  return a.points.front().timestamp < b.points.front().timestamp;
}

}  // namespace

Label Track::label() const {
  if (cls == BinaryClass::unlabeled) throw std::logic_error("track has no class label");
  return cls == BinaryClass::fishing ? Label::fishing : Label::non_fishing;
}

void CleaningConfig::validate() const {
  if (!(max_gap_s > 0) || min_points == 0 || !(extreme_speed_mps > 0) ||
      !(motionless_diag_m > 0) || !(displacement_m > 0)) {
    throw ConfigError("cleaning thresholds must be positive");
  }
  if (!(status_fraction > 0) || status_fraction > 1) {
    throw ConfigError("status_fraction must lie in (0, 1]");
  }
}

void summarize(Track& track) {
  std::vector<ShipType> types;
  std::vector<int> statuses;
  std::vector<double> lengths;
  std::vector<double> widths;
  for (const auto& p : track.points) {
    if (p.ship_type) types.push_back(*p.ship_type);
    if (p.nav_status) statuses.push_back(*p.nav_status);
    if (p.length) lengths.push_back(*p.length);
    if (p.width) widths.push_back(*p.width);
  }
  track.ship_type = modal(types);
  track.cls = to_binary_class(track.ship_type);
  track.extras = {modal(statuses), modal(lengths), modal(widths)};
}

std::vector<Track> split_tracks(const std::vector<AisRecord>& records, const CleaningConfig& cfg) {
  cfg.validate();
  std::map<std::uint32_t, std::vector<AisRecord>> groups;
  for (const auto& r : records) groups[r.mmsi].push_back(r);

  std::vector<Track> out;
  for (auto& [mmsi, points] : groups) {
    std::stable_sort(points.begin(), points.end(),
                     [](const AisRecord& a, const AisRecord& b) { return a.timestamp < b.timestamp; });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const AisRecord& a, const AisRecord& b) {
                               return a.timestamp == b.timestamp;
                             }),
                 points.end());
    cut_at_gaps(mmsi, points, cfg, out);
  }
  std::sort(out.begin(), out.end(), track_order);
  return out;
}

std::vector<Track> remove_extreme_noise(const Track& track, const CleaningConfig& cfg) {
  const auto& pts = track.points;
  const double limit = cfg.extreme_speed_mps;
  std::size_t first = 0;
  // A leading outlier would otherwise reject everything after it: drop it when
  // its successor agrees with the point after that.
  while (pts.size() - first >= 3 && implied_speed(pts[first], pts[first + 1]) > limit &&
         implied_speed(pts[first + 1], pts[first + 2]) <= limit) {
    ++first;
  }

  std::vector<AisRecord> kept;
  kept.reserve(pts.size());
  if (first < pts.size()) kept.push_back(pts[first]);
  for (std::size_t i = first + 1; i < pts.size(); ++i) {
    if (implied_speed(kept.back(), pts[i]) <= limit) kept.push_back(pts[i]);
  }

  std::vector<Track> out;
  cut_at_gaps(track.mmsi, kept, cfg, out);
  return out;
}

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::unlabeled: return "unlabeled";
    case DropReason::not_a_ship: return "not_a_ship";
    case DropReason::motionless: return "motionless";
    case DropReason::inconsistent: return "inconsistent";
  }
  return "unknown";
}

std::optional<DropReason> drop_reason(const Track& track, const CleaningConfig& cfg) {
  if (track.cls == BinaryClass::unlabeled) return DropReason::unlabeled;
  if (cfg.full) {
    for (const auto& p : track.points) {
      if (p.mobile_class != MobileClass::ship) return DropReason::not_a_ship;
    }
  }
  if (track.points.empty()) return DropReason::motionless;

  const LocalFrame frame(track.points.front().lat, track.points.front().lon);
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  for (const auto& p : track.points) {
    const auto q = frame.project(p.lat, p.lon);
    min_x = std::min(min_x, q.x);
    max_x = std::max(max_x, q.x);
    min_y = std::min(min_y, q.y);
    max_y = std::max(max_y, q.y);
  }
  if (std::hypot(max_x - min_x, max_y - min_y) < cfg.motionless_diag_m) {
    return DropReason::motionless;
  }

  if (cfg.full) {
    std::size_t stationary = 0;
    for (const auto& p : track.points) {
      if (p.nav_status && (*p.nav_status == nav_status::moored ||
                           *p.nav_status == nav_status::at_anchor)) {
        ++stationary;
      }
    }
    const double fraction =
        static_cast<double>(stationary) / static_cast<double>(track.points.size());
    const auto& a = track.points.front();
    const auto& b = track.points.back();
    if (fraction >= cfg.status_fraction &&
        haversine_m(a.lat, a.lon, b.lat, b.lon) > cfg.displacement_m) {
      return DropReason::inconsistent;
    }
  }
  return std::nullopt;
}

std::vector<Track> drop_invalid(std::vector<Track> tracks, const CleaningConfig& cfg) {
  std::erase_if(tracks, [&](const Track& t) { return drop_reason(t, cfg).has_value(); });
  return tracks;
}

CleaningResult clean(const std::vector<AisRecord>& records, const CleaningConfig& cfg) {
  CleaningResult result;
  auto& st = result.stats;
  st.input_records = records.size();

  auto candidates = split_tracks(records, cfg);
  st.candidates = candidates.size();

  std::vector<Track> denoised;
  if (cfg.full) {
    for (const auto& t : candidates) {
      auto parts = remove_extreme_noise(t, cfg);
      std::size_t kept = 0;
      for (const auto& p : parts) kept += p.points.size();
      st.noise_points_removed += t.points.size() - kept;
      if (parts.empty()) ++st.dropped_short_after_noise;
      for (auto& p : parts) denoised.push_back(std::move(p));
    }
  } else {
    denoised = std::move(candidates);
  }

  for (auto& t : denoised) {
    const auto reason = drop_reason(t, cfg);
    if (!reason) {
      st.output_points += t.points.size();
      result.tracks.push_back(std::move(t));
      continue;
    }
    switch (*reason) {
      case DropReason::unlabeled: ++st.dropped_unlabeled; break;
      case DropReason::not_a_ship: ++st.dropped_not_a_ship; break;
      case DropReason::motionless: ++st.dropped_motionless; break;
      case DropReason::inconsistent: ++st.dropped_inconsistent; break;
    }
  }
  std::sort(result.tracks.begin(), result.tracks.end(), track_order);
  st.output_tracks = result.tracks.size();
  return result;
}

std::string check_track_invariants(const Track& track, const CleaningConfig& cfg) {
  if (track.points.size() < cfg.min_points) return "fewer than min_points points";
  if (track.cls == BinaryClass::unlabeled) return "unlabeled";
  for (std::size_t i = 1; i < track.points.size(); ++i) {
    const auto dt = track.points[i].timestamp - track.points[i - 1].timestamp;
    if (dt <= 0) return "timestamps not strictly increasing at point " + std::to_string(i);
    if (static_cast<double>(dt) > cfg.max_gap_s) return "gap above max_gap_s at point " + std::to_string(i);
  }
  for (const auto& p : track.points) {
    if (p.mmsi != track.mmsi) return "point with foreign mmsi";
  }
  return {};
}

std::vector<AisRecord> flatten(const std::vector<Track>& tracks) {
  std::vector<AisRecord> out;
  for (const auto& t : tracks) out.insert(out.end(), t.points.begin(), t.points.end());
  return out;
}

}  // namespace aisclass
