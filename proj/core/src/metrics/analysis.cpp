#include "pedeval/metrics/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace pedeval::metrics {

AnalyzedScene analyze(Scene scene, const MetricConfig& config) {
  std::vector<kinematics::SmoothedTrajectory> smoothed;
  std::vector<kinematics::KinematicSummary> summaries;
  smoothed.reserve(scene.size());
  summaries.reserve(scene.size());
  for (const auto& traj : scene.trajectories()) {
    smoothed.push_back(kinematics::kalman_smooth(traj, scene.fps(), config.smoother));
    summaries.push_back(kinematics::summarize(smoothed.back(), scene.fps(), config.stationary_threshold_m));
  }
  return {std::move(scene), std::move(smoothed), std::move(summaries)};
}

Corpus analyze(std::span<const Scene> scenes, const MetricConfig& config) {
  std::vector<std::optional<AnalyzedScene>> slots(scenes.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < scenes.size(); i = next++) {
      try {
        slots[i] = analyze(scenes[i], config);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(scenes.size(), std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  Corpus out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<std::vector<AgentState>> frame_states(const AnalyzedScene& scene) {
  const auto active = active_sets(scene.scene);
  const auto trajs = scene.scene.trajectories();
  std::vector<std::vector<AgentState>> out(active.size());
  for (std::size_t k = 0; k < active.size(); ++k) {
    out[k].reserve(active[k].size());
    for (const auto& e : active[k]) {
      out[k].push_back({e.trajectory, trajs[e.trajectory].positions()[e.index],
                        scene.smoothed[e.trajectory].velocities[e.index]});
    }
  }
  return out;
}

}  // namespace pedeval::metrics
