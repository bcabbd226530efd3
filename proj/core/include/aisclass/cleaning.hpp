#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aisclass/types.hpp"

namespace aisclass {

/// Per-track static data used as extra classifier inputs.
struct StaticExtras {
  std::optional<int> nav_status;  // most frequent reported status
  std::optional<double> length;
  std::optional<double> width;

  friend bool operator==(const StaticExtras&, const StaticExtras&) = default;
};

struct Track {
  std::uint32_t mmsi = 0;
  std::vector<AisRecord> points;  // strictly increasing timestamps
  std::optional<ShipType> ship_type;
  BinaryClass cls = BinaryClass::unlabeled;
  StaticExtras extras;

  /// Throws std::logic_error when the track is unlabeled.
  Label label() const;

  friend bool operator==(const Track&, const Track&) = default;
};

struct CleaningConfig {
  double max_gap_s = 11.0;
  std::size_t min_points = 50;
  double extreme_speed_mps = 55.0;
  double motionless_diag_m = 100.0;
  double status_fraction = 0.9;
  double displacement_m = 500.0;
  /// false selects the minimum cleaning: track division, unlabeled and
  /// motionless removal only.
  bool full = true;

  void validate() const;
};

/// Recomputes ship_type, class and static extras from the points (modal
/// values, ties to the smallest).
void summarize(Track& track);

/// Groups by MMSI, orders by time, collapses duplicate timestamps to their
/// first occurrence, cuts at gaps above max_gap_s and drops short fragments.
/// Output is ordered by (mmsi, first timestamp).
std::vector<Track> split_tracks(const std::vector<AisRecord>& records, const CleaningConfig& cfg);

/// Drops points whose implied speed from the last kept point exceeds
/// extreme_speed_mps. Removal can open gaps, so the result is re-cut; empty
/// when nothing of min_points length survives.
std::vector<Track> remove_extreme_noise(const Track& track, const CleaningConfig& cfg);

enum class DropReason : std::uint8_t { unlabeled, not_a_ship, motionless, inconsistent };
std::string_view to_string(DropReason reason);

/// First rule that rejects `track`, or nullopt if it is kept. Rules
/// `not_a_ship` and `inconsistent` only apply under full cleaning.
std::optional<DropReason> drop_reason(const Track& track, const CleaningConfig& cfg);

std::vector<Track> drop_invalid(std::vector<Track> tracks, const CleaningConfig& cfg);

struct CleaningStats {
  std::size_t input_records = 0;
  std::size_t candidates = 0;
  std::size_t noise_points_removed = 0;
  std::size_t dropped_short_after_noise = 0;
  std::size_t dropped_unlabeled = 0;
  std::size_t dropped_not_a_ship = 0;
  std::size_t dropped_motionless = 0;
  std::size_t dropped_inconsistent = 0;
  std::size_t output_tracks = 0;
  std::size_t output_points = 0;
};

struct CleaningResult {
  std::vector<Track> tracks;
  CleaningStats stats;
};

/// Full cleaning chain: split, (full only) extreme-noise removal, drop_invalid.
CleaningResult clean(const std::vector<AisRecord>& records, const CleaningConfig& cfg);

/// Empty string when every emitted-track invariant holds, else a description
/// of the first violation.
std::string check_track_invariants(const Track& track, const CleaningConfig& cfg);

std::vector<AisRecord> flatten(const std::vector<Track>& tracks);

}  // namespace aisclass
