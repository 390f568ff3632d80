#pragma once

#include <cstdint>
#include <vector>

#include "pedeval/trajdata/types.hpp"

namespace pedeval::kinematics {

struct SmootherConfig {
  double accel_sigma = 1.0;           // m/s^2, white-noise acceleration
  double measurement_sigma = 0.1;     // m
  double initial_velocity_var = 10.0; // (m/s)^2
};

struct SmoothedTrajectory {
  AgentId agent_id = 0;
  std::int64_t start_frame = 0;
  std::vector<Point2> positions;   // smoothed p~_k
  std::vector<Point2> velocities;  // v_k, m/s
  Point2 raw_start;
  Point2 raw_end;

  std::size_t length() const noexcept { return positions.size(); }
  std::int64_t end_frame() const noexcept {
    return start_frame + static_cast<std::int64_t>(positions.size()) - 1;
  }
};

/// Constant-velocity Kalman filter with a Rauch-Tung-Striebel backward pass,
/// run independently on x and y with dt = 1/fps. The filter starts at the
/// first measurement with the first finite-difference velocity as its mean.
/// A single-point trajectory gets zero velocity.
SmoothedTrajectory kalman_smooth(const Trajectory& trajectory, double fps, const SmootherConfig& config = {});

/// Linear-interpolation resampling onto the frame grid of `target_fps`,
/// keeping the same time span. Always returns at least one point.
Trajectory resample(const Trajectory& trajectory, double source_fps, double target_fps);

}  // namespace pedeval::kinematics
