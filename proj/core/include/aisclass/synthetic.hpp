#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aisclass/types.hpp"

namespace aisclass {

enum class Behavior : std::uint8_t { transit, fishing };
std::string_view to_string(Behavior b);

/// Defects injected into generated tracks, each recorded in the ledger.
struct DefectConfig {
  double outlier_track_fraction = 0.0;  // tracks receiving teleported points
  std::size_t outliers_per_track = 1;
  double outlier_jump_m = 10000.0;
  double gap_track_fraction = 0.0;  // tracks with one reporting gap
  std::int64_t gap_s = 30;
  double inconsistent_track_fraction = 0.0;  // moving but reporting moored
  std::size_t motionless_tracks = 0;         // extra labeled stationary tracks
  std::size_t base_station_tracks = 0;
  std::size_t unlabeled_tracks = 0;  // extra moving tracks without ship type
};

/// Generator parameters. Transit vessels steam straight at a constant speed;
/// fishing vessels work at low speed with frequent course changes, turning
/// at a finite rate. Report timing follows the Class A schedule: every 10 s
/// below 14 kn (3 1/3 s while turning), 6 s up to 23 kn (2 s turning), 2 s
/// above.
struct SyntheticScenario {
  std::size_t n_fishing = 200;
  std::size_t n_transit = 800;
  double transit_speed_min = 6.0;  // m/s
  double transit_speed_max = 10.0;
  double fishing_speed_min = 1.0;
  double fishing_speed_max = 3.0;
  double turn_min_deg = 20.0;
  double turn_max_deg = 90.0;
  double turn_interval_min_s = 30.0;
  double turn_interval_max_s = 120.0;
  double turn_rate_deg_s = 3.0;
  std::size_t points_min = 150;  // reports per track before defects
  std::size_t points_max = 400;
  double noise_sigma_m = 10.0;
  DefectConfig defects;
  std::uint64_t seed = 1;
  void validate() const;
};

/// Scenario with the defect mix used to exercise the cleaning stage.
SyntheticScenario defective_scenario(std::uint64_t seed = 1);

struct DefectEntry {
  std::string kind;  // outlier, gap, inconsistent, motionless, base_station, unlabeled
  std::size_t point = 0;  // index in the emitted track, where meaningful
};

struct GroundTruth {
  std::uint32_t mmsi = 0;
  Behavior behavior = Behavior::transit;
  ShipType ship_type = ShipType::unknown;  // as broadcast; unknown when withheld
  Label truth = Label::non_fishing;
  std::size_t points = 0;
  std::vector<DefectEntry> defects;
};

struct SyntheticData {
  std::vector<AisRecord> records;  // ordered by mmsi, then time
  std::vector<GroundTruth> ledger;
};

/// Deterministic for a given scenario, including its seed.
SyntheticData generate_synthetic(const SyntheticScenario& scenario);

std::string ledger_to_json(const std::vector<GroundTruth>& ledger);

}  // namespace aisclass
