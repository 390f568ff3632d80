#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pedeval/geometry/camera.hpp"
#include "pedeval/geometry/depth.hpp"
#include "pedeval/geometry/plane.hpp"
#include "pedeval/geometry/scale.hpp"
#include "pedeval/trajdata/types.hpp"

namespace pedeval::pipeline {

struct ReconstructionConfig {
  geometry::ScaleConfig scale;
  std::int64_t keyframe_stride = 8;
  geometry::HeightPrior height;
  geometry::PlaneFitConfig plane;
  geometry::StaticityThresholds staticity;
  int depth_fallback_radius = 3;
};

struct ReconstructionInput {
  const TrackletSet& tracklets;
  const geometry::CameraSequence& cameras;
  const geometry::DepthSequence& relative_depth;
  const geometry::DepthSequence& metric_depth;  // keyframes
  double fps = 25.0;
  /// Per-frame reconstruction-confidence rasters; optional.
  const geometry::DepthSequence* geo_confidence = nullptr;
};

struct KeyframeScale {
  std::int64_t frame = 0;
  geometry::ScaleEstimate estimate;
};

struct Rejection {
  std::string reason;  // too_few_pixels | too_few_inliers | no_keyframes | no_heights | nonpositive_height
  std::optional<std::int64_t> frame;
};

struct ReconstructionResult {
  std::optional<Scene> scene;  // unset when rejected
  std::optional<Rejection> rejection;
  std::vector<KeyframeScale> keyframes;
  std::optional<geometry::AnthropometricResult> anthropometric;
  std::optional<geometry::GroundPlane> plane;
  std::optional<bool> camera_static;
  std::map<std::string, std::int64_t> diagnostics;

  bool rejected() const noexcept { return rejection.has_value(); }
};

/// Keyframe scales (frames of metric_depth on the stride), interpolated
/// lambda, anthropometric correction, un-projection, ground-plane BEV.
/// A failing keyframe rejects the whole clip; that is a normal result, not
/// an exception.
ReconstructionResult reconstruct_t2v(const ReconstructionInput& input, const ReconstructionConfig& config = {},
                                     std::uint64_t seed = 0);

/// Summary or rejection record as JSON.
std::string to_json(const ReconstructionResult& result);

}  // namespace pedeval::pipeline
