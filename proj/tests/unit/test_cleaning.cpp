#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "aisclass/cleaning.hpp"
#include "aisclass/errors.hpp"
#include "aisclass/synthetic.hpp"
#include "fixtures.hpp"

using namespace aisclass;
using fixtures::straight;

namespace {

// Great-circle distance written out independently of the library.
double haversine_oracle(double lat1, double lon1, double lat2, double lon2) {
  const double r = 6371000.0;
  const double p1 = lat1 * M_PI / 180, p2 = lat2 * M_PI / 180;
  const double dp = p2 - p1, dl = (lon2 - lon1) * M_PI / 180;
  const double a = std::sin(dp / 2) * std::sin(dp / 2) +
                   std::cos(p1) * std::cos(p2) * std::sin(dl / 2) * std::sin(dl / 2);
  return 2 * r * std::asin(std::sqrt(a));
}

}  // namespace

TEST(SplitTracks, SixtyContactsMakeOneCandidate) {
  const auto tracks = split_tracks(straight(219000001, 60, 10, 5), {});
  ASSERT_EQ(tracks.size(), 1u);
  EXPECT_EQ(tracks[0].points.size(), 60u);
  EXPECT_EQ(tracks[0].cls, BinaryClass::non_fishing);
}

TEST(SplitTracks, GapDiscardsShortPrefix) {
  auto pts = straight(219000001, 100, 10, 5);
  for (std::size_t i = 49; i < pts.size(); ++i) pts[i].timestamp += 20;  // 30 s gap before point 49
  const auto tracks = split_tracks(pts, {});
  ASSERT_EQ(tracks.size(), 1u);
  EXPECT_EQ(tracks[0].points.size(), 51u);
  EXPECT_EQ(tracks[0].points.front().timestamp, pts[49].timestamp);
}

TEST(SplitTracks, TooFewContactsGiveNothing) {
  EXPECT_TRUE(split_tracks(straight(219000001, 49, 5, 5), {}).empty());
  EXPECT_TRUE(split_tracks({}, {}).empty());
}

TEST(SplitTracks, GapExactlyAtLimitDoesNotCut) {
  const auto tracks = split_tracks(straight(219000001, 60, 11, 5), {});
  ASSERT_EQ(tracks.size(), 1u);
}

TEST(SplitTracks, DuplicatesCollapseToFirstAndInputIsRegrouped) {
  auto a = straight(219000002, 55, 10, 5);
  auto b = straight(219000001, 55, 10, 5, 90.0);
  std::vector<AisRecord> mixed;
  for (std::size_t i = 0; i < 55; ++i) {
    mixed.push_back(a[54 - i]);
    mixed.push_back(b[i]);
  }
  AisRecord dup = b[10];
  dup.lat += 0.5;
  mixed.push_back(dup);
  const auto tracks = split_tracks(mixed, {});
  ASSERT_EQ(tracks.size(), 2u);
  EXPECT_EQ(tracks[0].mmsi, 219000001u);
  EXPECT_EQ(tracks[1].mmsi, 219000002u);
  EXPECT_EQ(tracks[0].points, b);
  EXPECT_EQ(tracks[1].points, a);
}

TEST(ExtremeNoise, StraightTrackUnchanged) {
  const Track t = fixtures::make_track(straight(219000001, 80, 10, 5));
  const auto out = remove_extreme_noise(t, {});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].points, t.points);
}

TEST(ExtremeNoise, TeleportedPointRemoved) {
  // 5 s cadence so dropping one point leaves a 10 s step, below the gap cut.
  auto pts = straight(219000001, 80, 5, 5);
  const double dlat = 10000.0 / 6371000.0 * 180.0 / M_PI;  // 10 km north
  pts[40].lat += dlat;
  const double implied = haversine_oracle(pts[39].lat, pts[39].lon, pts[40].lat, pts[40].lon) / 5.0;
  ASSERT_GT(implied, 900.0);
  const auto out = remove_extreme_noise(fixtures::make_track(pts), {});
  ASSERT_EQ(out.size(), 1u);
  ASSERT_EQ(out[0].points.size(), 79u);
  for (const auto& p : out[0].points) EXPECT_NE(p.timestamp, pts[40].timestamp);
}

TEST(ExtremeNoise, LeadingOutlierRemovedRemainderIntact) {
  auto pts = straight(219000001, 80, 10, 5);
  pts[0].lon += 0.5;
  const auto out = remove_extreme_noise(fixtures::make_track(pts), {});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].points, std::vector<AisRecord>(pts.begin() + 1, pts.end()));
}

TEST(ExtremeNoise, RemovalThatOpensGapRecuts) {
  auto pts = straight(219000001, 120, 10, 5);
  pts[60].lat += 0.2;  // removing it leaves a 20 s gap
  const auto out = remove_extreme_noise(fixtures::make_track(pts), {});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].points.size(), 60u);
  EXPECT_EQ(out[1].points.size(), 59u);
}

TEST(ExtremeNoise, TrackBelowMinimumIsDiscarded) {
  auto pts = straight(219000001, 52, 10, 5);
  for (std::size_t i = 10; i < 52; i += 10) pts[i].lat += 0.2;
  EXPECT_TRUE(remove_extreme_noise(fixtures::make_track(pts), {}).empty());
}

TEST(DropInvalid, Rules) {
  CleaningConfig full;
  CleaningConfig minimum;
  minimum.full = false;

  auto still = straight(219000001, 60, 10, 0.0);
  EXPECT_EQ(drop_reason(fixtures::make_track(still), full), DropReason::motionless);
  EXPECT_EQ(drop_reason(fixtures::make_track(still), minimum), DropReason::motionless);

  const auto untyped = straight(219000002, 60, 10, 5, 0, std::nullopt);
  EXPECT_EQ(drop_reason(fixtures::make_track(untyped), full), DropReason::unlabeled);
  EXPECT_EQ(drop_reason(fixtures::make_track(untyped), minimum), DropReason::unlabeled);

  auto station = straight(219000003, 60, 10, 5);
  for (auto& p : station) p.mobile_class = MobileClass::base_station;
  EXPECT_EQ(drop_reason(fixtures::make_track(station), full), DropReason::not_a_ship);
  EXPECT_EQ(drop_reason(fixtures::make_track(station), minimum), std::nullopt);

  auto moored = straight(219000004, 60, 10, 5);  // 2.95 km displacement
  for (auto& p : moored) p.nav_status = nav_status::moored;
  EXPECT_EQ(drop_reason(fixtures::make_track(moored), full), DropReason::inconsistent);
  EXPECT_EQ(drop_reason(fixtures::make_track(moored), minimum), std::nullopt);

  auto anchored_drift = straight(219000005, 60, 10, 0.5);  // 295 m: consistent
  for (auto& p : anchored_drift) p.nav_status = nav_status::at_anchor;
  EXPECT_EQ(drop_reason(fixtures::make_track(anchored_drift), full), std::nullopt);

  EXPECT_EQ(drop_reason(fixtures::make_track(straight(219000006, 60, 10, 5)), full), std::nullopt);
}

// 100 tracks, 20 of which receive a known violation; the rule set must flag
// exactly those with the recorded reason.
TEST(DropInvalid, FaultInjectorLedger) {
  Rng rng(5);
  std::vector<std::size_t> order(100);
  for (std::size_t i = 0; i < 100; ++i) order[i] = i;
  rng.shuffle(order);
  std::map<std::size_t, DropReason> ledger;
  const DropReason kinds[] = {DropReason::unlabeled, DropReason::not_a_ship, DropReason::motionless,
                              DropReason::inconsistent};
  for (std::size_t k = 0; k < 20; ++k) ledger[order[k]] = kinds[k % 4];

  std::vector<Track> tracks;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto mmsi = static_cast<std::uint32_t>(219000100 + i);
    const double speed = rng.uniform(2.0, 9.0);
    auto pts = straight(mmsi, 60 + rng.below(40), 10, speed, rng.uniform(0, 360),
                        i % 5 ? ShipType::cargo : ShipType::fishing, 1000, 55 + rng.uniform01(),
                        11 + rng.uniform01());
    auto it = ledger.find(i);
    if (it != ledger.end()) {
      switch (it->second) {
        case DropReason::unlabeled:
          for (auto& p : pts) p.ship_type.reset();
          break;
        case DropReason::not_a_ship:
          pts[pts.size() / 2].mobile_class = MobileClass::other;
          break;
        case DropReason::motionless:
          pts = straight(mmsi, pts.size(), 10, 0.1);
          break;
        case DropReason::inconsistent:
          for (auto& p : pts) p.nav_status = nav_status::moored;
          break;
      }
    }
    tracks.push_back(fixtures::make_track(pts));
  }
  std::map<std::size_t, DropReason> flagged;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    if (auto r = drop_reason(tracks[i], {})) flagged[i] = *r;
  }
  EXPECT_EQ(flagged, ledger);
  EXPECT_EQ(drop_invalid(tracks, {}).size(), 80u);
}

namespace {

SyntheticData defective_sample(std::uint64_t seed) {
  SyntheticScenario sc = defective_scenario(seed);
  sc.n_fishing = 20;
  sc.n_transit = 60;
  sc.defects.motionless_tracks = 4;
  sc.defects.unlabeled_tracks = 4;
  sc.defects.base_station_tracks = 2;
  return generate_synthetic(sc);
}

}  // namespace

TEST(Clean, EmittedTracksSatisfyInvariants) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto data = defective_sample(seed);
    for (bool full : {true, false}) {
      CleaningConfig cfg;
      cfg.full = full;
      const auto res = clean(data.records, cfg);
      ASSERT_FALSE(res.tracks.empty());
      for (const auto& t : res.tracks) {
        EXPECT_EQ(check_track_invariants(t, cfg), "");
        ASSERT_GE(t.points.size(), 50u);
        EXPECT_NE(t.cls, BinaryClass::unlabeled);
        for (std::size_t i = 1; i < t.points.size(); ++i) {
          const auto dt = t.points[i].timestamp - t.points[i - 1].timestamp;
          EXPECT_GT(dt, 0);
          EXPECT_LE(dt, 11);
        }
      }
      for (std::size_t i = 1; i < res.tracks.size(); ++i) {
        const auto& a = res.tracks[i - 1];
        const auto& b = res.tracks[i];
        EXPECT_TRUE(a.mmsi < b.mmsi ||
                    (a.mmsi == b.mmsi && a.points.front().timestamp < b.points.front().timestamp));
      }
      EXPECT_EQ(res.stats.output_tracks, res.tracks.size());
    }
  }
}

TEST(Clean, FullCleaningRemovesInjectedDefects) {
  const auto data = defective_sample(4);
  const auto res = clean(data.records, {});
  std::set<std::uint32_t> kept;
  for (const auto& t : res.tracks) kept.insert(t.mmsi);
  for (const auto& g : data.ledger) {
    for (const auto& d : g.defects) {
      if (d.kind == "motionless" || d.kind == "base_station" || d.kind == "unlabeled" ||
          d.kind == "inconsistent") {
        EXPECT_FALSE(kept.count(g.mmsi)) << g.mmsi << " " << d.kind;
      }
    }
  }
  for (const auto& t : res.tracks) {
    for (std::size_t i = 1; i < t.points.size(); ++i) {
      const auto& a = t.points[i - 1];
      const auto& b = t.points[i];
      EXPECT_LE(haversine_oracle(a.lat, a.lon, b.lat, b.lon) /
                    static_cast<double>(b.timestamp - a.timestamp),
                55.0);
    }
  }
  EXPECT_GT(res.stats.noise_points_removed, 0u);
}

TEST(Clean, Idempotent) {
  for (bool full : {true, false}) {
    CleaningConfig cfg;
    cfg.full = full;
    const auto once = clean(defective_sample(6).records, cfg);
    const auto twice = clean(flatten(once.tracks), cfg);
    EXPECT_EQ(twice.tracks, once.tracks);
  }
}

TEST(Clean, FullRetainsNothingMinimumRejects) {
  for (std::uint64_t seed : {7, 8}) {
    const auto data = defective_sample(seed);
    CleaningConfig minimum;
    minimum.full = false;
    const auto full_res = clean(data.records, {});
    const auto min_res = clean(data.records, minimum);
    std::set<std::pair<std::uint32_t, std::int64_t>> min_points;
    for (const auto& p : flatten(min_res.tracks)) min_points.insert({p.mmsi, p.timestamp});
    for (const auto& p : flatten(full_res.tracks)) {
      EXPECT_TRUE(min_points.count({p.mmsi, p.timestamp})) << p.mmsi << "@" << p.timestamp;
    }
  }
}

TEST(Clean, ConfigValidation) {
  CleaningConfig c;
  c.status_fraction = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.max_gap_s = -1;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.min_points = 0;
  EXPECT_THROW(split_tracks({}, c), ConfigError);
}

TEST(Clean, SummaryUsesModalValuesTiesToSmallest) {
  auto pts = straight(219000001, 60, 10, 5);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts[i].length = i % 2 ? 30.0 : 20.0;
    pts[i].nav_status = i < 40 ? 7 : 0;
    if (i < 10) pts[i].ship_type = ShipType::fishing;
  }
  const Track t = fixtures::make_track(pts);
  EXPECT_EQ(t.ship_type, ShipType::cargo);
  EXPECT_EQ(t.extras.length, 20.0);
  EXPECT_EQ(t.extras.nav_status, 7);
  EXPECT_EQ(t.label(), Label::non_fishing);
}
