#include "aisclass/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "aisclass/errors.hpp"
#include "aisclass/geo.hpp"
#include "aisclass/random.hpp"

namespace aisclass {
namespace {

constexpr double kKnotsPerMps = 1.943844492440605;
constexpr std::int64_t kEpochBase = 1'700'000'000;
constexpr double kSubstep = 1.0 / 3.0;  // s; report times fall on this grid

struct TruePoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double speed = 0.0;
  double heading = 0.0;
};

double report_interval(double speed_mps, bool turning) {
  const double kn = speed_mps * kKnotsPerMps;
  if (kn < 14.0) return turning ? 10.0 / 3.0 : 10.0;
  if (kn < 23.0) return turning ? 2.0 : 6.0;
  return 2.0;
}

struct Motion {
  double x = 0.0;
  double y = 0.0;
  double speed = 0.0;
  double target_speed = 0.0;
  double heading = 0.0;
  double turn_left = 0.0;  // signed degrees still to turn
  double next_turn = 0.0;  // s until the next course change
};

// Integrates one behavior on a 1/3 s grid and samples it at report times.
std::vector<TruePoint> simulate(Behavior behavior, std::size_t n_points, double still_speed,
                                const SyntheticScenario& sc, Rng& rng) {
  Motion m;
  m.heading = rng.uniform(0.0, 360.0);
  if (behavior == Behavior::transit) {
    m.speed = rng.uniform(sc.transit_speed_min, sc.transit_speed_max);
  } else {
    m.speed = rng.uniform(sc.fishing_speed_min, sc.fishing_speed_max);
    m.next_turn = rng.uniform(sc.turn_interval_min_s, sc.turn_interval_max_s);
  }
  if (still_speed >= 0.0) m.speed = still_speed;
  m.target_speed = m.speed;

  std::vector<TruePoint> out;
  out.reserve(n_points);
  double t = 0.0;
  double next_report = 0.0;
  constexpr double accel = 0.05;  // m/s^2
  while (out.size() < n_points) {
    if (t >= next_report - 1e-9) {
      out.push_back({t, m.x, m.y, m.speed, m.heading});
      next_report = t + report_interval(m.speed, m.turn_left != 0.0);
    }
    if (behavior == Behavior::fishing && still_speed < 0.0) {
      m.next_turn -= kSubstep;
      if (m.next_turn <= 0.0 && m.turn_left == 0.0) {
        const double mag = rng.uniform(sc.turn_min_deg, sc.turn_max_deg);
        m.turn_left = rng.uniform01() < 0.5 ? -mag : mag;
        m.target_speed = rng.uniform(sc.fishing_speed_min, sc.fishing_speed_max);
        m.next_turn = rng.uniform(sc.turn_interval_min_s, sc.turn_interval_max_s);
      }
      if (m.turn_left != 0.0) {
        const double step = std::min(std::abs(m.turn_left), sc.turn_rate_deg_s * kSubstep);
        const double signed_step = m.turn_left > 0.0 ? step : -step;
        m.heading = wrap_deg_360(m.heading + signed_step);
        m.turn_left -= signed_step;
        if (std::abs(m.turn_left) < 1e-9) m.turn_left = 0.0;
      }
      const double dv = m.target_speed - m.speed;
      m.speed += std::clamp(dv, -accel * kSubstep, accel * kSubstep);
    }
    const double h = deg2rad(m.heading);
    m.x += m.speed * std::sin(h) * kSubstep;
    m.y += m.speed * std::cos(h) * kSubstep;
    t += kSubstep;
  }
  return out;
}

constexpr ShipType kTransitTypes[] = {
    ShipType::cargo,  ShipType::cargo,     ShipType::cargo,   ShipType::tanker,
    ShipType::tanker, ShipType::passenger, ShipType::tug,     ShipType::towing,
    ShipType::pilot,  ShipType::hsc,       ShipType::military, ShipType::sailing,
    ShipType::pleasure, ShipType::dredging, ShipType::law_enforcement, ShipType::sar};

struct Dimensions {
  double length = 0.0;
  double width = 0.0;
};

Dimensions dimensions_for(ShipType type, Rng& rng) {
  double lo = 20.0, hi = 60.0;
  switch (type) {
    case ShipType::fishing: lo = 10.0; hi = 45.0; break;
    case ShipType::cargo:
    case ShipType::tanker: lo = 80.0; hi = 300.0; break;
    case ShipType::passenger: lo = 40.0; hi = 200.0; break;
    case ShipType::pleasure:
    case ShipType::sailing:
    case ShipType::pilot: lo = 8.0; hi = 25.0; break;
    default: break;
  }
  const double length = std::round(rng.uniform(lo, hi));
  return {length, std::round(length * rng.uniform(0.15, 0.25))};
}

struct TrackPlan {
  Behavior behavior = Behavior::transit;
  std::optional<ShipType> type;
  bool stationary = false;
  bool base_station = false;
};

}  // namespace

std::string_view to_string(Behavior b) { return b == Behavior::fishing ? "fishing" : "transit"; }

void SyntheticScenario::validate() const {
  auto range = [](double lo, double hi, const char* what) {
    if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError(std::string("invalid range for ") + what);
  };
  range(transit_speed_min, transit_speed_max, "transit speed");
  range(fishing_speed_min, fishing_speed_max, "fishing speed");
  range(turn_min_deg, turn_max_deg, "turn angle");
  range(turn_interval_min_s, turn_interval_max_s, "turn interval");
  if (!(turn_rate_deg_s > 0.0)) throw ConfigError("turn rate must be positive");
  if (points_min < 2 || points_max < points_min) throw ConfigError("invalid points range");
  if (!(noise_sigma_m >= 0.0)) throw ConfigError("noise sigma must be non-negative");
  for (double f : {defects.outlier_track_fraction, defects.gap_track_fraction,
                   defects.inconsistent_track_fraction}) {
    if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("defect fractions must lie in [0, 1]");
  }
  if (defects.gap_s <= 0 || !(defects.outlier_jump_m > 0.0)) {
    throw ConfigError("gap and outlier sizes must be positive");
  }
}

SyntheticScenario defective_scenario(std::uint64_t seed) {
  SyntheticScenario sc;
  sc.seed = seed;
  sc.defects.outlier_track_fraction = 0.3;
  sc.defects.outliers_per_track = 3;
  sc.defects.gap_track_fraction = 0.1;
  sc.defects.inconsistent_track_fraction = 0.1;
  sc.defects.motionless_tracks = 20;
  sc.defects.base_station_tracks = 5;
  sc.defects.unlabeled_tracks = 20;
  return sc;
}

SyntheticData generate_synthetic(const SyntheticScenario& sc) {
  sc.validate();
  Rng plan_rng(derive_seed(sc.seed, 0xB0));

  std::vector<TrackPlan> plans;
  for (std::size_t i = 0; i < sc.n_fishing; ++i) plans.push_back({Behavior::fishing, ShipType::fishing});
  for (std::size_t i = 0; i < sc.n_transit; ++i) plans.push_back({Behavior::transit, std::nullopt});
  plan_rng.shuffle(plans);
  for (auto& p : plans) {
    if (!p.type) p.type = kTransitTypes[plan_rng.below(std::size(kTransitTypes))];
  }
  for (std::size_t i = 0; i < sc.defects.motionless_tracks; ++i) {
    const ShipType type = kTransitTypes[plan_rng.below(std::size(kTransitTypes))];
    plans.push_back({Behavior::transit, type, true});
  }
  for (std::size_t i = 0; i < sc.defects.unlabeled_tracks; ++i) {
    plans.push_back({plan_rng.uniform01() < 0.5 ? Behavior::fishing : Behavior::transit, std::nullopt});
  }
  for (std::size_t i = 0; i < sc.defects.base_station_tracks; ++i) {
    plans.push_back({Behavior::transit, std::nullopt, true, true});
  }

  SyntheticData data;
  std::uint32_t next_ship = 219'000'001;
  std::uint32_t next_station = 2'190'001;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const TrackPlan& plan = plans[i];
    Rng rng(derive_seed(sc.seed, i + 1));
    GroundTruth gt;
    gt.mmsi = plan.base_station ? next_station++ : next_ship++;
    gt.behavior = plan.behavior;
    gt.ship_type = plan.type.value_or(ShipType::unknown);
    gt.truth = plan.behavior == Behavior::fishing ? Label::fishing : Label::non_fishing;

    const std::size_t n = sc.points_min + rng.below(sc.points_max - sc.points_min + 1);
    auto truth = simulate(plan.behavior, n, plan.stationary ? 0.0 : -1.0, sc, rng);
    const double origin_lat = rng.uniform(54.5, 57.5);
    const double origin_lon = rng.uniform(8.0, 13.0);
    const LocalFrame frame(origin_lat, origin_lon);
    const std::int64_t t0 = kEpochBase + static_cast<std::int64_t>(rng.below(86'400));

    // A stationary transmitter jitters far less than the full sensor noise
    // so that its bounding box stays small.
    const double sigma = plan.stationary ? 0.3 * sc.noise_sigma_m : sc.noise_sigma_m;
    int status = plan.behavior == Behavior::fishing
                     ? (rng.uniform01() < 0.5 ? nav_status::engaged_in_fishing : nav_status::under_way_engine)
                     : (rng.uniform01() < 0.9 ? nav_status::under_way_engine : nav_status::undefined);
    if (plan.stationary) status = nav_status::moored;
    const Dimensions dim = dimensions_for(plan.type.value_or(ShipType::cargo), rng);

    // Reporting gap: drop every report within gap_s of the chosen point.
    if (!plan.stationary && rng.uniform01() < sc.defects.gap_track_fraction && truth.size() > 4) {
      const std::size_t g = truth.size() / 4 + rng.below(truth.size() / 2);
      const double until = std::floor(truth[g].t) + static_cast<double>(sc.defects.gap_s);
      std::size_t j = g + 1;
      while (j < truth.size() && std::floor(truth[j].t) < until) ++j;
      truth.erase(truth.begin() + static_cast<std::ptrdiff_t>(g + 1),
                  truth.begin() + static_cast<std::ptrdiff_t>(j));
      if (g + 1 < truth.size()) gt.defects.push_back({"gap", g});
    }
    // Only tracks that clearly move away can contradict a moored status.
    const double net = std::hypot(truth.back().x - truth.front().x, truth.back().y - truth.front().y);
    if (!plan.stationary && rng.uniform01() < sc.defects.inconsistent_track_fraction && net > 1000.0) {
      status = nav_status::moored;
      gt.defects.push_back({"inconsistent", 0});
    }
    std::vector<std::size_t> outliers;
    if (!plan.stationary && rng.uniform01() < sc.defects.outlier_track_fraction && truth.size() > 2) {
      for (std::size_t k = 0; k < sc.defects.outliers_per_track; ++k) {
        outliers.push_back(1 + rng.below(truth.size() - 2));
      }
      std::sort(outliers.begin(), outliers.end());
      outliers.erase(std::unique(outliers.begin(), outliers.end()), outliers.end());
      for (std::size_t k : outliers) gt.defects.push_back({"outlier", k});
    }
    if (plan.stationary) gt.defects.push_back({plan.base_station ? "base_station" : "motionless", 0});
    if (!plan.type && !plan.base_station) gt.defects.push_back({"unlabeled", 0});

    for (std::size_t k = 0; k < truth.size(); ++k) {
      const TruePoint& p = truth[k];
      double x = p.x + sigma * rng.normal();
      double y = p.y + sigma * rng.normal();
      if (std::binary_search(outliers.begin(), outliers.end(), k)) {
        const double dir = rng.uniform(0.0, 2.0 * kPi);
        x += sc.defects.outlier_jump_m * std::cos(dir);
        y += sc.defects.outlier_jump_m * std::sin(dir);
      }
      AisRecord r;
      r.timestamp = t0 + static_cast<std::int64_t>(std::floor(p.t + 1e-9));
      r.mmsi = gt.mmsi;
      frame.unproject({x, y}, r.lat, r.lon);
      r.sog = std::round(p.speed * kKnotsPerMps * 10.0) / 10.0;
      r.cog = std::fmod(std::round(p.heading * 10.0) / 10.0, 360.0);
      if (plan.base_station) {
        r.mobile_class = MobileClass::base_station;
        r.sog.reset();
        r.cog.reset();
      } else {
        r.nav_status = status;
        r.ship_type = plan.type;
        r.length = dim.length;
        r.width = dim.width;
      }
      data.records.push_back(r);
    }
    gt.points = truth.size();
    data.ledger.push_back(std::move(gt));
  }
  std::stable_sort(data.records.begin(), data.records.end(), [](const AisRecord& a, const AisRecord& b) {
    return a.mmsi != b.mmsi ? a.mmsi < b.mmsi : a.timestamp < b.timestamp;
  });
  std::sort(data.ledger.begin(), data.ledger.end(),
            [](const GroundTruth& a, const GroundTruth& b) { return a.mmsi < b.mmsi; });
  return data;
}

std::string ledger_to_json(const std::vector<GroundTruth>& ledger) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& g : ledger) {
    nlohmann::ordered_json defects = nlohmann::ordered_json::array();
    for (const auto& d : g.defects) defects.push_back({{"kind", d.kind}, {"point", d.point}});
    arr.push_back({{"mmsi", g.mmsi},
                   {"behavior", to_string(g.behavior)},
                   {"ship_type", to_string(g.ship_type)},
                   {"truth", to_string(g.truth)},
                   {"points", g.points},
                   {"defects", std::move(defects)}});
  }
  return arr.dump(2);
}

}  // namespace aisclass
