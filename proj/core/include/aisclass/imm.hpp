#pragma once

#include <array>
#include <string>

#include <Eigen/Dense>

#include "aisclass/cleaning.hpp"
#include "aisclass/kinematics.hpp"

namespace aisclass {

/// State ordering is [x, vx, y, vy] in meters and m/s.
using StateVec = Eigen::Matrix<double, 4, 1>;
using StateCov = Eigen::Matrix<double, 4, 4>;
using Meas = Eigen::Vector2d;
using MeasCov = Eigen::Matrix2d;

/// Constant-velocity motion model driven by white-noise acceleration of
/// intensity q (m^2/s^3).
struct ModeConfig {
  std::string name;
  double q = 0.01;
};

struct ImmConfig {
  std::array<ModeConfig, 2> modes{ModeConfig{"linear", 0.01}, ModeConfig{"maneuver", 1.0}};
  /// transition(i, j) = P(mode j at k | mode i at k-1). Rows sum to one.
  Eigen::Matrix2d transition = (Eigen::Matrix2d() << 0.95, 0.05, 0.05, 0.95).finished();
  double meas_noise_sigma = 10.0;  // m
  double init_pos_var = 100.0;     // m^2
  double init_vel_var = 100.0;     // m^2/s^2
  std::array<double, 2> init_mode_prob{0.5, 0.5};

  void validate() const;
};

struct ImmState {
  std::array<StateVec, 2> x;
  std::array<StateCov, 2> P;
  std::array<double, 2> mu{0.5, 0.5};
  StateVec x_combined;
  StateCov P_combined;
};

struct EkfResult {
  StateVec x;
  StateCov P;
  Meas innovation;
  MeasCov S;
  double likelihood = 0.0;
};

StateCov transition_matrix(double dt);
StateCov process_noise(double dt, double q);

/// Prediction half of ekf_step.
void predict(StateVec& x, StateCov& P, double dt, double q);

/// One predict/update cycle with a planar position measurement. Throws
/// NumericalError when the innovation covariance is singular or its
/// condition number exceeds 1e12.
EkfResult ekf_step(const StateVec& x, const StateCov& P, const Meas& z, double dt, double q,
                   double meas_sigma);

ImmState initial_state(const Meas& z, const ImmConfig& cfg);

struct ImmStepInfo {
  bool likelihood_underflow = false;
};

/// Interaction, per-mode filtering, mode probability update and combination.
/// When every mode likelihood underflows the mode probabilities are kept.
ImmState imm_step(const ImmState& state, const Meas& z, double dt, const ImmConfig& cfg,
                  ImmStepInfo* info = nullptr);

/// Filters a cleaned track point by point in its local plane. Throws
/// NumericalError naming the MMSI and step on filter failure.
FilteredTrack smooth_track(const Track& track, const ImmConfig& cfg);

}  // namespace aisclass
