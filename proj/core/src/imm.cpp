#include "aisclass/imm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <spdlog/spdlog.h>

#include "aisclass/errors.hpp"
#include "aisclass/geo.hpp"

namespace aisclass {
namespace {

constexpr double kMaxConditionNumber = 1e12;

StateCov symmetrized(const StateCov& P) { return 0.5 * (P + P.transpose()); }

}  // namespace

void ImmConfig::validate() const {
  for (int i = 0; i < 2; ++i) {
    double row = 0.0;
    for (int j = 0; j < 2; ++j) {
      const double p = transition(i, j);
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("transition entries must lie in [0, 1]");
      row += p;
    }
    if (std::abs(row - 1.0) > 1e-12) throw ConfigError("transition rows must sum to 1");
  }
  if (!(modes[0].q > 0.0) || !(modes[1].q > 0.0)) {
    throw ConfigError("process noise intensities must be positive");
  }
  if (!(modes[1].q > modes[0].q)) {
    throw ConfigError("maneuver mode must have larger process noise than the linear mode");
  }
  if (!(meas_noise_sigma > 0.0)) throw ConfigError("meas_noise_sigma must be positive");
  if (!(init_pos_var > 0.0) || !(init_vel_var > 0.0)) {
    throw ConfigError("initial variances must be positive");
  }
  const double mu_sum = init_mode_prob[0] + init_mode_prob[1];
  if (init_mode_prob[0] < 0 || init_mode_prob[1] < 0 || std::abs(mu_sum - 1.0) > 1e-12) {
    throw ConfigError("initial mode probabilities must be a distribution");
  }
}

StateCov transition_matrix(double dt) {
  StateCov F = StateCov::Identity();
  F(0, 1) = dt;
  F(2, 3) = dt;
  return F;
}

StateCov process_noise(double dt, double q) {
  const double dt2 = dt * dt;
  const double dt3 = dt2 * dt;
  StateCov Q = StateCov::Zero();
  for (int axis = 0; axis < 2; ++axis) {
    const int p = 2 * axis;
    const int v = p + 1;
    Q(p, p) = q * dt3 / 3.0;
    Q(p, v) = q * dt2 / 2.0;
    Q(v, p) = q * dt2 / 2.0;
    Q(v, v) = q * dt;
  }
  return Q;
}

void predict(StateVec& x, StateCov& P, double dt, double q) {
  const StateCov F = transition_matrix(dt);
  x = F * x;
  P = symmetrized(F * P * F.transpose() + process_noise(dt, q));
}

EkfResult ekf_step(const StateVec& x, const StateCov& P, const Meas& z, double dt, double q,
                   double meas_sigma) {
  if (!(dt > 0.0)) throw std::invalid_argument("ekf_step requires dt > 0");
  EkfResult r;
  r.x = x;
  r.P = P;
  predict(r.x, r.P, dt, q);

  Eigen::Matrix<double, 2, 4> H = Eigen::Matrix<double, 2, 4>::Zero();
  H(0, 0) = 1.0;
  H(1, 2) = 1.0;
  const MeasCov R = MeasCov::Identity() * (meas_sigma * meas_sigma);

  r.innovation = z - H * r.x;
  r.S = H * r.P * H.transpose() + R;
  r.S = 0.5 * (r.S + r.S.transpose());

  // Closed-form eigenvalues of the symmetric 2x2 innovation covariance.
  const double tr = r.S.trace();
  const double det = r.S.determinant();
  const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  const double lmax = 0.5 * tr + disc;
  const double lmin = 0.5 * tr - disc;
  if (!(lmin > 0.0) || !std::isfinite(lmax) || lmax / lmin > kMaxConditionNumber) {
    throw NumericalError("innovation covariance is singular or ill-conditioned");
  }

  const MeasCov S_inv = r.S.inverse();
  const Eigen::Matrix<double, 4, 2> K = r.P * H.transpose() * S_inv;
  r.x = r.x + K * r.innovation;
  const StateCov I_KH = StateCov::Identity() - K * H;
  // Joseph form keeps P positive semi-definite under round-off.
  r.P = symmetrized(I_KH * r.P * I_KH.transpose() + K * R * K.transpose());

  const double mahal = r.innovation.dot(S_inv * r.innovation);
  r.likelihood = std::exp(-0.5 * mahal) / (2.0 * kPi * std::sqrt(det));
  return r;
}

ImmState initial_state(const Meas& z, const ImmConfig& cfg) {
  ImmState s;
  StateVec x0;
  x0 << z(0), 0.0, z(1), 0.0;
  StateCov P0 = StateCov::Zero();
  P0(0, 0) = cfg.init_pos_var;
  P0(1, 1) = cfg.init_vel_var;
  P0(2, 2) = cfg.init_pos_var;
  P0(3, 3) = cfg.init_vel_var;
  s.x = {x0, x0};
  s.P = {P0, P0};
  s.mu = cfg.init_mode_prob;
  s.x_combined = x0;
  s.P_combined = P0;
  return s;
}

ImmState imm_step(const ImmState& state, const Meas& z, double dt, const ImmConfig& cfg,
                  ImmStepInfo* info) {
  const auto& Pi = cfg.transition;
  const auto& mu = state.mu;

  // Predicted mode probabilities c_j and mixing weights mu_{i|j}.
  std::array<double, 2> c{};
  for (int j = 0; j < 2; ++j) c[j] = Pi(0, j) * mu[0] + Pi(1, j) * mu[1];

  std::array<StateVec, 2> x_mixed;
  std::array<StateCov, 2> P_mixed;
  for (int j = 0; j < 2; ++j) {
    if (c[j] <= 0.0) {
      // Unreachable mode: no mass flows into it, keep its own estimate.
      x_mixed[j] = state.x[j];
      P_mixed[j] = state.P[j];
      continue;
    }
    std::array<double, 2> w{Pi(0, j) * mu[0] / c[j], Pi(1, j) * mu[1] / c[j]};
    x_mixed[j] = w[0] * state.x[0] + w[1] * state.x[1];
    StateCov P = StateCov::Zero();
    for (int i = 0; i < 2; ++i) {
      const StateVec d = state.x[i] - x_mixed[j];
      P += w[i] * (state.P[i] + d * d.transpose());
    }
    P_mixed[j] = symmetrized(P);
  }

  ImmState next;
  std::array<double, 2> lik{};
  for (int j = 0; j < 2; ++j) {
    const auto r = ekf_step(x_mixed[j], P_mixed[j], z, dt, cfg.modes[j].q, cfg.meas_noise_sigma);
    next.x[j] = r.x;
    next.P[j] = r.P;
    lik[j] = r.likelihood;
  }

  const double norm = c[0] * lik[0] + c[1] * lik[1];
  if (norm > 0.0 && std::isfinite(norm)) {
    next.mu[0] = c[0] * lik[0] / norm;
    next.mu[1] = c[1] * lik[1] / norm;
  } else {
    next.mu = mu;
    if (info) info->likelihood_underflow = true;
  }

  next.x_combined = next.mu[0] * next.x[0] + next.mu[1] * next.x[1];
  StateCov P = StateCov::Zero();
  for (int j = 0; j < 2; ++j) {
    const StateVec d = next.x[j] - next.x_combined;
    P += next.mu[j] * (next.P[j] + d * d.transpose());
  }
  next.P_combined = symmetrized(P);
  return next;
}

FilteredTrack smooth_track(const Track& track, const ImmConfig& cfg) {
  cfg.validate();
  FilteredTrack out;
  out.mmsi = track.mmsi;
  out.ship_type = track.ship_type;
  out.cls = track.cls;
  out.extras = track.extras;
  out.source = KinematicSource::imm;
  if (track.points.empty()) return out;

  const LocalFrame frame(track.points.front().lat, track.points.front().lon);
  out.origin_lat = frame.origin_lat();
  out.origin_lon = frame.origin_lon();
  out.points.reserve(track.points.size());

  auto emit = [&](std::int64_t t, const ImmState& s) {
    KinematicPoint k;
    k.t = t;
    k.x = s.x_combined(0);
    k.vx = s.x_combined(1);
    k.y = s.x_combined(2);
    k.vy = s.x_combined(3);
    k.speed = std::hypot(k.vx, k.vy);
    k.course = course_from_velocity(k.vx, k.vy);
    k.mode_prob = s.mu;
    out.points.push_back(k);
  };

  auto measurement = [&](const AisRecord& r) {
    const auto p = frame.project(r.lat, r.lon);
    return Meas(p.x, p.y);
  };

  ImmState state = initial_state(measurement(track.points.front()), cfg);
  emit(track.points.front().timestamp, state);
  for (std::size_t i = 1; i < track.points.size(); ++i) {
    const auto& r = track.points[i];
    const double dt = static_cast<double>(r.timestamp - track.points[i - 1].timestamp);
    ImmStepInfo info;
    try {
      state = imm_step(state, measurement(r), dt, cfg, &info);
    } catch (const NumericalError& e) {
      throw NumericalError("IMM failure on mmsi " + std::to_string(track.mmsi) + " at step " +
                           std::to_string(i) + ": " + e.what());
    }
    if (info.likelihood_underflow) ++out.underflow_steps;
    emit(r.timestamp, state);
  }
  if (out.underflow_steps > 0) {
    spdlog::warn("mmsi {}: all mode likelihoods underflowed on {} step(s); mode probabilities held",
                 track.mmsi, out.underflow_steps);
  }
  return out;
}

}  // namespace aisclass
