#pragma once

#include <cstdint>
#include <span>

#include "pedeval/trajdata/types.hpp"

namespace pedeval {

struct SceneStatistics {
  std::int64_t n_detections = 0;  // N.D.
  std::int64_t n_unique = 0;      // N.U.
  std::int64_t frame_count = 0;
  double detections_per_frame = 0.0;  // D/F; 0 when frame_count == 0
};

SceneStatistics scene_statistics(const Scene& scene);

/// Totals over several clips; D/F is total detections over total frames.
SceneStatistics scene_statistics(std::span<const Scene> scenes);

struct AccumulationThresholds {
  std::int64_t min_unique_tracks = 150;
  std::int64_t min_detections = 1500;
};

/// True once the pooled clips hold enough tracks or enough detections for a
/// stable I2V comparison. All scenes must share one fps.
bool accumulation_check(std::span<const Scene> scenes, const AccumulationThresholds& thresholds = {});

}  // namespace pedeval
