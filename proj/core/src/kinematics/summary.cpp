#include "pedeval/kinematics/summary.hpp"

namespace pedeval::kinematics {

KinematicSummary summarize(const SmoothedTrajectory& st, double fps, double stationary_threshold) {
  KinematicSummary s;
  s.agent_id = st.agent_id;
  s.length = st.length();
  const std::size_t n = st.length();

  if (n >= 2) {
    double speed = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      speed += norm(st.velocities[k]);
      s.path_length += distance(st.positions[k], st.positions[k - 1]);
    }
    s.mean_speed = speed / static_cast<double>(n - 1);
  }
  if (n >= 3) {
    // t_k - t_{k-1} = 1/fps
    double accel = 0.0;
    for (std::size_t k = 2; k < n; ++k) accel += norm(st.velocities[k] - st.velocities[k - 1]) * fps;
    s.mean_accel = accel / static_cast<double>(n - 2);
  }
  if (n >= 1) s.displacement = distance(st.positions.back(), st.positions.front());
  s.raw_displacement = distance(st.raw_end, st.raw_start);
  s.is_stationary = s.raw_displacement < stationary_threshold;
  return s;
}

}  // namespace pedeval::kinematics
