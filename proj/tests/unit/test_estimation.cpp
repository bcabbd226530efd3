#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "aisclass/errors.hpp"
#include "aisclass/geo.hpp"
#include "aisclass/imm.hpp"
#include "aisclass/random.hpp"
#include "aisclass/synthetic.hpp"
#include "fixtures.hpp"

using namespace aisclass;

namespace {

double min_eigenvalue(const StateCov& P) {
  Eigen::SelfAdjointEigenSolver<StateCov> es(P);
  return es.eigenvalues().minCoeff();
}

// Noisy straight track in the local plane of its first point, with truth.
struct NoisyTrack {
  Track track;
  std::vector<PlanePoint> truth;
};

NoisyTrack noisy_straight(std::uint64_t seed, std::size_t n, double sigma) {
  Rng rng(seed);
  const double speed = rng.uniform(3.0, 10.0);
  const double course = deg2rad(rng.uniform(0.0, 360.0));
  const LocalFrame frame(55.0, 12.0);
  NoisyTrack out;
  std::vector<AisRecord> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = speed * 10.0 * static_cast<double>(i);
    const PlanePoint p{d * std::sin(course), d * std::cos(course)};
    out.truth.push_back(p);
    AisRecord r = fixtures::record(219000001, 1000 + 10 * static_cast<std::int64_t>(i), 0, 0);
    frame.unproject({p.x + sigma * rng.normal(), p.y + sigma * rng.normal()}, r.lat, r.lon);
    pts.push_back(r);
  }
  out.track = fixtures::make_track(pts);
  return out;
}

}  // namespace

TEST(LocalFrame, OriginProjectsToZero) {
  const LocalFrame f(56.2, 10.7);
  const auto p = f.project(56.2, 10.7);
  EXPECT_EQ(p.x, 0.0);
  EXPECT_EQ(p.y, 0.0);
}

TEST(LocalFrame, MilliDegreeNorthAtEquator) {
  const LocalFrame f(0.0, 0.0);
  const auto p = f.project(0.001, 0.0);
  EXPECT_NEAR(p.y, 6371000.0 * 0.001 * M_PI / 180.0, 1e-9);
  EXPECT_NEAR(p.y, 111.19, 0.01);
  EXPECT_EQ(p.x, 0.0);
}

TEST(LocalFrame, RoundTripWithinFiftyKilometres) {
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const LocalFrame f(rng.uniform(-80.0, 80.0), rng.uniform(-180.0, 180.0));
    const PlanePoint p{rng.uniform(-35000.0, 35000.0), rng.uniform(-35000.0, 35000.0)};
    double lat, lon;
    f.unproject(p, lat, lon);
    const auto q = f.project(lat, lon);
    EXPECT_NEAR(q.x, p.x, 1e-6);
    EXPECT_NEAR(q.y, p.y, 1e-6);
  }
}

TEST(LocalFrame, DateLineIsWrapped) {
  const LocalFrame f(0.0, 179.9995);
  const auto p = f.project(0.0, -179.9995);
  EXPECT_NEAR(p.x, 6371000.0 * 0.001 * M_PI / 180.0, 1e-6);
}

TEST(Ekf, PredictOnlyAtRest) {
  StateVec x;
  x << 10.0, 0.0, -5.0, 0.0;
  StateCov P = StateCov::Identity() * 4.0;
  const double trace_before = P.trace();
  predict(x, P, 10.0, 0.01);
  EXPECT_EQ(x(0), 10.0);
  EXPECT_EQ(x(2), -5.0);
  EXPECT_GT(P.trace(), trace_before);
}

TEST(Ekf, ScalarGainIsOneHalf) {
  // Position variance 100, no velocity uncertainty, no process noise:
  // gain P / (P + R) = 0.5 and posterior variance 50 on each axis.
  StateVec x = StateVec::Zero();
  StateCov P = StateCov::Zero();
  P(0, 0) = 100.0;
  P(2, 2) = 100.0;
  const Meas z(8.0, -4.0);
  const auto r = ekf_step(x, P, z, 1.0, 0.0, 10.0);
  EXPECT_DOUBLE_EQ(r.x(0), 4.0);
  EXPECT_DOUBLE_EQ(r.x(2), -2.0);
  EXPECT_DOUBLE_EQ(r.P(0, 0), 50.0);
  EXPECT_DOUBLE_EQ(r.P(2, 2), 50.0);
  EXPECT_DOUBLE_EQ(r.S(0, 0), 200.0);
  // N(nu; 0, S) written out.
  const double expected = std::exp(-0.5 * (64.0 + 16.0) / 200.0) / (2.0 * M_PI * 200.0);
  EXPECT_NEAR(r.likelihood, expected, 1e-15);
}

TEST(Ekf, MeasurementAtPredictionLeavesPositionUnchanged) {
  StateVec x;
  x << 0.0, 2.0, 0.0, -1.0;
  const StateCov P = StateCov::Identity() * 25.0;
  const auto r = ekf_step(x, P, Meas(20.0, -10.0), 10.0, 0.01, 10.0);
  EXPECT_EQ(r.innovation(0), 0.0);
  EXPECT_EQ(r.innovation(1), 0.0);
  EXPECT_DOUBLE_EQ(r.x(0), 20.0);
  EXPECT_DOUBLE_EQ(r.x(2), -10.0);
}

TEST(Ekf, IllConditionedInnovationThrows) {
  StateVec x = StateVec::Zero();
  StateCov P = StateCov::Identity();
  P(0, 0) = 1e20;
  EXPECT_THROW(ekf_step(x, P, Meas(0, 0), 1.0, 0.01, 1.0), NumericalError);
  EXPECT_THROW(ekf_step(x, StateCov::Identity(), Meas(0, 0), 0.0, 0.01, 1.0), std::invalid_argument);
}

TEST(Imm, IdenticalModesMatchSingleFilter) {
  ImmConfig cfg;
  cfg.modes[1].q = cfg.modes[0].q;
  cfg.init_mode_prob = {0.9, 0.1};
  const auto nt = noisy_straight(3, 120, 10.0);
  const LocalFrame frame(nt.track.points[0].lat, nt.track.points[0].lon);
  auto meas = [&](std::size_t i) {
    const auto p = frame.project(nt.track.points[i].lat, nt.track.points[i].lon);
    return Meas(p.x, p.y);
  };
  ImmState s = initial_state(meas(0), cfg);
  StateVec x = s.x_combined;
  StateCov P = s.P_combined;
  for (std::size_t i = 1; i < nt.track.points.size(); ++i) {
    s = imm_step(s, meas(i), 10.0, cfg);
    const auto r = ekf_step(x, P, meas(i), 10.0, cfg.modes[0].q, cfg.meas_noise_sigma);
    x = r.x;
    P = r.P;
    EXPECT_LT((s.x_combined - x).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((s.P_combined - P).cwiseAbs().maxCoeff(), 1e-9);
  }
  // Equal likelihoods leave only the Markov chain: mu0 - 0.5 shrinks by
  // 0.95 - 0.05 per step.
  const double steps = static_cast<double>(nt.track.points.size() - 1);
  EXPECT_NEAR(s.mu[0], 0.5 + 0.4 * std::pow(0.9, steps), 1e-12);
}

TEST(Imm, IdentityTransitionReducesToSingleFilterExactly) {
  ImmConfig cfg;
  cfg.transition = Eigen::Matrix2d::Identity();
  cfg.init_mode_prob = {1.0, 0.0};
  const auto nt = noisy_straight(4, 80, 10.0);
  const LocalFrame frame(nt.track.points[0].lat, nt.track.points[0].lon);
  auto meas = [&](std::size_t i) {
    const auto p = frame.project(nt.track.points[i].lat, nt.track.points[i].lon);
    return Meas(p.x, p.y);
  };
  ImmState s = initial_state(meas(0), cfg);
  StateVec x = s.x_combined;
  StateCov P = s.P_combined;
  for (std::size_t i = 1; i < nt.track.points.size(); ++i) {
    s = imm_step(s, meas(i), 10.0, cfg);
    const auto r = ekf_step(x, P, meas(i), 10.0, cfg.modes[0].q, cfg.meas_noise_sigma);
    x = r.x;
    P = r.P;
    ASSERT_TRUE(s.x_combined == x) << "step " << i;
    ASSERT_TRUE(s.P_combined == P) << "step " << i;
    ASSERT_EQ(s.mu[0], 1.0);
  }
}

TEST(Imm, StraightTrackFavoursLinearMode) {
  const ImmConfig cfg;
  const auto pts = fixtures::straight(219000001, 100, 10, 5.0, 30.0);
  const auto ft = smooth_track(fixtures::make_track(pts), cfg);
  ASSERT_EQ(ft.points.size(), 100u);
  EXPECT_GT(ft.points[20].mode_prob[0], 0.8);
  for (std::size_t i = 20; i < ft.points.size(); ++i) EXPECT_GT(ft.points[i].mode_prob[0], 0.8) << i;
}

TEST(Imm, ManoeuvreRaisesManoeuvreMode) {
  ImmConfig cfg;
  auto pts = fixtures::straight(219000001, 60, 10, 5.0, 0.0);
  auto turn = fixtures::straight(219000001, 40, 10, 5.0, 90.0, ShipType::cargo, pts.back().timestamp + 10,
                                 pts.back().lat, pts.back().lon);
  pts.insert(pts.end(), turn.begin(), turn.end());
  const auto ft = smooth_track(fixtures::make_track(pts), cfg);
  double peak = 0.0;
  for (std::size_t i = 60; i < 70; ++i) peak = std::max(peak, ft.points[i].mode_prob[1]);
  EXPECT_GT(peak, ft.points[55].mode_prob[1]);
  EXPECT_GT(peak, 0.5);
}

TEST(Imm, ProbabilitiesAndCovariancesStayValid) {
  SyntheticScenario sc;
  sc.n_fishing = 8;
  sc.n_transit = 8;
  sc.seed = 9;
  const auto data = generate_synthetic(sc);
  const auto tracks = clean(data.records, {}).tracks;
  ASSERT_FALSE(tracks.empty());
  const ImmConfig cfg;
  std::size_t steps = 0;
  for (const auto& t : tracks) {
    const LocalFrame frame(t.points[0].lat, t.points[0].lon);
    auto meas = [&](std::size_t i) {
      const auto p = frame.project(t.points[i].lat, t.points[i].lon);
      return Meas(p.x, p.y);
    };
    ImmState s = initial_state(meas(0), cfg);
    for (std::size_t i = 1; i < t.points.size(); ++i) {
      const double dt = static_cast<double>(t.points[i].timestamp - t.points[i - 1].timestamp);
      s = imm_step(s, meas(i), dt, cfg);
      ++steps;
      ASSERT_NEAR(s.mu[0] + s.mu[1], 1.0, 1e-12);
      ASSERT_GE(s.mu[0], 0.0);
      ASSERT_GE(s.mu[1], 0.0);
      for (int j = 0; j < 2; ++j) {
        ASSERT_TRUE(s.P[j].isApprox(s.P[j].transpose()));
        ASSERT_GE(min_eigenvalue(s.P[j]), -1e-9);
      }
      // Combined state is the probability-weighted mean.
      const StateVec mean = s.mu[0] * s.x[0] + s.mu[1] * s.x[1];
      ASSERT_LT((mean - s.x_combined).cwiseAbs().maxCoeff(), 1e-9);
      // Spread-of-means term is PSD.
      const StateCov within = s.mu[0] * s.P[0] + s.mu[1] * s.P[1];
      ASSERT_GE(min_eigenvalue(s.P_combined - within), -1e-9);
    }
  }
  EXPECT_GT(steps, 1000u);
}

TEST(Imm, UnderflowKeepsModeProbabilities) {
  const ImmConfig cfg;
  ImmState s = initial_state(Meas(0, 0), cfg);
  s.mu = {0.7, 0.3};
  ImmStepInfo info;
  const auto next = imm_step(s, Meas(1e7, 1e7), 1.0, cfg, &info);
  EXPECT_TRUE(info.likelihood_underflow);
  EXPECT_EQ(next.mu[0], 0.7);
  EXPECT_EQ(next.mu[1], 0.3);
}

TEST(SmoothTrack, NoiselessConstantVelocityConverges) {
  const auto pts = fixtures::straight(219000001, 60, 10, 6.0, 123.0);
  const auto ft = smooth_track(fixtures::make_track(pts), ImmConfig{});
  const LocalFrame frame(pts[0].lat, pts[0].lon);
  for (std::size_t i = 10; i < pts.size(); ++i) {
    const auto truth = frame.project(pts[i].lat, pts[i].lon);
    EXPECT_LT(std::hypot(ft.points[i].x - truth.x, ft.points[i].y - truth.y), 1.0) << i;
  }
  EXPECT_NEAR(ft.points.back().speed, 6.0, 0.05);
  EXPECT_NEAR(ft.points.back().course, 123.0, 0.5);
  EXPECT_EQ(ft.points.front().t, pts.front().timestamp);
  EXPECT_EQ(ft.source, KinematicSource::imm);
}

TEST(SmoothTrack, NoisyStraightTrackRmseReduced) {
  // Transit tracks are straight. A noiseless twin with the same seed draws
  // the same noise samples, so it supplies the true positions.
  SyntheticScenario sc;
  sc.n_fishing = 0;
  sc.n_transit = 20;
  sc.seed = 11;
  const auto noisy = generate_synthetic(sc);
  sc.noise_sigma_m = 0.0;
  const auto truth = generate_synthetic(sc);
  ASSERT_EQ(noisy.records.size(), truth.records.size());

  double se_raw = 0, se_filt = 0;
  std::size_t i = 0;
  while (i < noisy.records.size()) {
    std::size_t j = i;
    while (j < noisy.records.size() && noisy.records[j].mmsi == noisy.records[i].mmsi) ++j;
    const std::vector<AisRecord> pts(noisy.records.begin() + static_cast<std::ptrdiff_t>(i),
                                     noisy.records.begin() + static_cast<std::ptrdiff_t>(j));
    const auto ft = smooth_track(fixtures::make_track(pts), ImmConfig{});
    const LocalFrame frame(pts[0].lat, pts[0].lon);
    for (std::size_t k = i; k < j; ++k) {
      ASSERT_EQ(noisy.records[k].timestamp, truth.records[k].timestamp);
      const auto t = frame.project(truth.records[k].lat, truth.records[k].lon);
      const auto m = frame.project(noisy.records[k].lat, noisy.records[k].lon);
      const auto& f = ft.points[k - i];
      se_raw += std::pow(m.x - t.x, 2) + std::pow(m.y - t.y, 2);
      se_filt += std::pow(f.x - t.x, 2) + std::pow(f.y - t.y, 2);
    }
    i = j;
  }
  EXPECT_LE(std::sqrt(se_filt), 0.7 * std::sqrt(se_raw));
}

TEST(SmoothTrack, Deterministic) {
  const auto nt = noisy_straight(77, 90, 10.0);
  EXPECT_EQ(smooth_track(nt.track, ImmConfig{}), smooth_track(nt.track, ImmConfig{}));
}

TEST(Kinematics, CourseConvention) {
  EXPECT_DOUBLE_EQ(course_from_velocity(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(course_from_velocity(1, 0), 90.0);
  EXPECT_DOUBLE_EQ(course_from_velocity(0, -1), 180.0);
  EXPECT_DOUBLE_EQ(course_from_velocity(-1, 0), 270.0);
  EXPECT_NEAR(course_from_velocity(-1, 1), 315.0, 1e-12);
}

TEST(Kinematics, RawFiniteDifferences) {
  const auto pts = fixtures::straight(219000001, 60, 10, 4.0, 200.0);
  const auto kt = raw_kinematics(fixtures::make_track(pts));
  ASSERT_EQ(kt.points.size(), 60u);
  EXPECT_EQ(kt.source, KinematicSource::raw);
  for (const auto& p : kt.points) {
    EXPECT_NEAR(p.speed, 4.0, 1e-6);
    EXPECT_NEAR(p.course, 200.0, 1e-6);
  }
}

TEST(ImmConfigValidation, RejectsBadValues) {
  ImmConfig c;
  c.transition << 0.9, 0.2, 0.1, 0.9;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.modes[1].q = c.modes[0].q;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.meas_noise_sigma = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_NO_THROW(ImmConfig{}.validate());
}
