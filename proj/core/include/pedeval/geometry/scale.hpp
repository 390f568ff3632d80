#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pedeval/geometry/camera.hpp"
#include "pedeval/geometry/depth.hpp"
#include "pedeval/trajdata/types.hpp"

namespace pedeval::geometry {

struct ScaleConfig {
  int ransac_iterations = 200;
  int sample_size = 50;
  int irls_steps = 10;
  double huber_delta = 0.5;               // meters
  double inlier_residual_fraction = 0.10; // of the median metric depth
  std::int64_t min_pixels = 100;
  double min_inlier_fraction = 0.30;
};

enum class ScaleStatus { kOk, kTooFewPixels, kTooFewInliers };

const char* to_string(ScaleStatus status);

/// Per-frame metric scale (meters per relative depth unit).
struct ScaleEstimate {
  ScaleStatus status = ScaleStatus::kTooFewPixels;
  double lambda = 0.0;
  double inlier_fraction = 0.0;
  std::int64_t n_pixels = 0;
  std::int64_t n_inliers = 0;
  double residual_median = 0.0;   // median |lambda*rel - metric| over all joint pixels
  double inlier_threshold = 0.0;  // inlier_residual_fraction * median(metric)

  bool valid() const noexcept { return status == ScaleStatus::kOk; }
};

/// Scalar Huber regression metric ~ lambda * rel by iteratively reweighted
/// least squares, started at the least-squares ratio.
double huber_scale(std::span<const double> rel, std::span<const double> metric, double delta, int steps);

/// RANSAC over pixel subsets of the joint validity mask; each hypothesis is
/// the Huber fit of its subset, scored by inlier count, and the winner is
/// refit on its inliers. Rasters must share dimensions.
ScaleEstimate estimate_scale(const DepthRaster& relative, const DepthRaster& metric,
                             const ScaleConfig& config = {}, std::uint64_t seed = 0);

/// Keyframe scales, linearly interpolated between keyframes and held
/// constant beyond the first and last.
class ScaleSchedule {
 public:
  ScaleSchedule() = default;
  explicit ScaleSchedule(std::map<std::int64_t, double> keyframes);

  double at(std::int64_t frame) const;
  ScaleSchedule scaled(double factor) const;
  const std::map<std::int64_t, double>& keyframes() const noexcept { return keyframes_; }
  bool empty() const noexcept { return keyframes_.empty(); }

 private:
  std::map<std::int64_t, double> keyframes_;
};

/// H = box_height_px * Z_cam / fy per detection, with Z_cam the scaled depth
/// at the ground-contact point. Entries are nullopt when the camera or depth
/// is unavailable. Output is aligned with tracklets.detections().
std::vector<std::optional<double>> estimate_person_heights(const TrackletSet& tracklets,
                                                           const CameraSequence& cameras,
                                                           const ScaleSchedule& scales,
                                                           const DepthSequence& depth,
                                                           std::optional<ImageSize> image = std::nullopt,
                                                           int fallback_radius = 3);

struct HeightPrior {
  double min_m = 1.4;     // exclusive
  double max_m = 2.0;     // exclusive
  double target_m = 1.7;
};

struct AnthropometricResult {
  bool rejected = false;   // mean height was not positive
  bool corrected = false;
  double factor = 1.0;     // multiplier applied to every lambda and height
  double mean_height_before = 0.0;
  double mean_height_after = 0.0;
  std::vector<double> lambdas;
  std::vector<double> heights;
};

/// Rescales every lambda by target/mean when the mean height lies outside the
/// open plausible interval. Heights scale linearly with lambda, so the
/// corrected heights are returned alongside.
AnthropometricResult anthropometric_correction(std::span<const double> heights,
                                               std::span<const double> lambdas,
                                               const HeightPrior& prior = {});

}  // namespace pedeval::geometry
