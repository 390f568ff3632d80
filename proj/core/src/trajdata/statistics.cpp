#include "pedeval/trajdata/statistics.hpp"

#include "pedeval/error.hpp"

namespace pedeval {

SceneStatistics scene_statistics(const Scene& scene) { return scene_statistics(std::span(&scene, 1)); }

SceneStatistics scene_statistics(std::span<const Scene> scenes) {
  SceneStatistics s;
  for (const Scene& scene : scenes) {
    for (const Trajectory& t : scene.trajectories()) {
      s.n_detections += static_cast<std::int64_t>(t.length());
    }
    s.n_unique += static_cast<std::int64_t>(scene.size());
    s.frame_count += scene.frame_count();
  }
  s.detections_per_frame =
      s.frame_count == 0 ? 0.0
                         : static_cast<double>(s.n_detections) / static_cast<double>(s.frame_count);
  return s;
}

bool accumulation_check(std::span<const Scene> scenes, const AccumulationThresholds& thresholds) {
  for (const Scene& s : scenes) {
    if (s.fps() != scenes.front().fps()) {
      throw Error(ErrorCode::kValidation, "accumulated scenes must share one fps");
    }
  }
  const SceneStatistics s = scene_statistics(scenes);
  return s.n_unique >= thresholds.min_unique_tracks || s.n_detections >= thresholds.min_detections;
}

}  // namespace pedeval
