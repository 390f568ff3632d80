#pragma once

#include <cstddef>

#include "pedeval/kinematics/smoother.hpp"

namespace pedeval::kinematics {

struct KinematicSummary {
  AgentId agent_id = 0;
  std::size_t length = 0;
  double mean_speed = 0.0;        // s-bar, m/s; 0 when L < 2
  double mean_accel = 0.0;        // a-bar, m/s^2; 0 when L < 3
  double path_length = 0.0;       // d, smoothed path, m
  double displacement = 0.0;      // |p~_end - p~_start|, m
  double raw_displacement = 0.0;  // |p_end - p_start|, m
  bool is_stationary = true;      // raw_displacement < threshold
};

KinematicSummary summarize(const SmoothedTrajectory& smoothed, double fps, double stationary_threshold = 0.2);

}  // namespace pedeval::kinematics
