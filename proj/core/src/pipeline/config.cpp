#include "pedeval/pipeline/config.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "pedeval/error.hpp"
#include "pedeval/trajdata/io.hpp"

namespace pedeval::pipeline {
namespace {

std::string num(double v) { return format_real(v); }

template <typename T>
std::string num(std::optional<T> v) {
  if constexpr (std::is_floating_point_v<T>)
    return v ? num(static_cast<double>(*v)) : "none";
  else
    return v ? std::to_string(*v) : "none";
}

// Optional settings accept "none" to clear them.
template <typename T>
void take_optional(KeyValues& kv, const std::string& key, std::optional<T>& target) {
  if (kv.contains(key)) {
    KeyValues probe;
    auto s = kv.take_string(key);
    if (*s == "none") {
      target.reset();
      return;
    }
    probe.set(key, *s);
    T value{};
    probe.take_into(key, value);
    target = value;
  }
}

}  // namespace

PipelineConfig apply_config(KeyValues& kv, PipelineConfig c) {
  auto& m = c.metrics;
  kv.take_into("metrics.collision_threshold_m", m.collision_threshold_m);
  kv.take_into("metrics.stationary_threshold_m", m.stationary_threshold_m);
  kv.take_into("metrics.moving_speed_threshold", m.moving_speed_threshold);
  kv.take_into("metrics.density_neighbors", m.density_neighbors);
  kv.take_into("metrics.nn_radius_m", m.nn_radius_m);
  kv.take_into("metrics.internal_diversity_subsample", m.internal_diversity_subsample);
  take_optional(kv, "metrics.internal_diversity_band", m.internal_diversity_band);
  take_optional(kv, "metrics.kde_bandwidth", m.kde_bandwidth);
  kv.take_into("metrics.kde_grid_points", m.kde_grid_points);
  kv.take_into("metrics.geo_conf_low_threshold", m.geo_conf_low_threshold);
  kv.take_into("metrics.fd_max_density", m.fd_max_density);
  kv.take_into("metrics.fd_bins", m.fd_bins);
  kv.take_into("metrics.polar_angle_bins", m.polar_angle_bins);
  kv.take_into("metrics.polar_radius_bins", m.polar_radius_bins);
  kv.take_into("smoother.accel_sigma", m.smoother.accel_sigma);
  kv.take_into("smoother.measurement_sigma", m.smoother.measurement_sigma);
  kv.take_into("smoother.initial_velocity_var", m.smoother.initial_velocity_var);

  auto& r = c.reconstruction;
  kv.take_into("scale.ransac_iterations", r.scale.ransac_iterations);
  kv.take_into("scale.sample_size", r.scale.sample_size);
  kv.take_into("scale.irls_steps", r.scale.irls_steps);
  kv.take_into("scale.huber_delta", r.scale.huber_delta);
  kv.take_into("scale.inlier_residual_fraction", r.scale.inlier_residual_fraction);
  kv.take_into("scale.min_pixels", r.scale.min_pixels);
  kv.take_into("scale.min_inlier_fraction", r.scale.min_inlier_fraction);
  kv.take_into("scale.keyframe_stride", r.keyframe_stride);
  kv.take_into("height.min_m", r.height.min_m);
  kv.take_into("height.max_m", r.height.max_m);
  kv.take_into("height.target_m", r.height.target_m);
  kv.take_into("plane.inlier_threshold_m", r.plane.inlier_threshold_m);
  kv.take_into("plane.ransac_iterations", r.plane.ransac_iterations);
  kv.take_into("staticity.max_translation_m", r.staticity.max_translation_m);
  kv.take_into("staticity.max_rotation_deg", r.staticity.max_rotation_deg);
  kv.take_into("depth.fallback_radius", r.depth_fallback_radius);

  kv.take_into("accumulation.min_unique_tracks", c.accumulation.min_unique_tracks);
  kv.take_into("accumulation.min_detections", c.accumulation.min_detections);

  const std::pair<const char*, double> positive[] = {
      {"metrics.collision_threshold_m", m.collision_threshold_m},
      {"metrics.stationary_threshold_m", m.stationary_threshold_m},
      {"metrics.nn_radius_m", m.nn_radius_m},
      {"metrics.fd_max_density", m.fd_max_density},
      {"smoother.accel_sigma", m.smoother.accel_sigma},
      {"smoother.measurement_sigma", m.smoother.measurement_sigma},
      {"scale.huber_delta", r.scale.huber_delta},
      {"scale.inlier_residual_fraction", r.scale.inlier_residual_fraction},
      {"height.target_m", r.height.target_m},
      {"plane.inlier_threshold_m", r.plane.inlier_threshold_m},
  };
  for (const auto& [key, value] : positive)
    if (!(value > 0.0) || !std::isfinite(value)) throw Error(ErrorCode::kValidation, "must be positive", key);
  if (m.moving_speed_threshold < 0.0 || (m.kde_bandwidth && !(*m.kde_bandwidth > 0.0)))
    throw Error(ErrorCode::kValidation, "moving_speed_threshold and kde_bandwidth must be positive");
  if (r.scale.min_inlier_fraction < 0.0 || r.scale.min_inlier_fraction > 1.0)
    throw Error(ErrorCode::kValidation, "must lie in [0, 1]", "scale.min_inlier_fraction");
  if (!(r.height.min_m < r.height.max_m)) throw Error(ErrorCode::kValidation, "height.min_m must be below height.max_m");
  if (m.fd_bins == 0 || m.polar_angle_bins == 0 || m.polar_radius_bins == 0)
    throw Error(ErrorCode::kValidation, "bin counts must be positive");
  if (m.density_neighbors == 0) throw Error(ErrorCode::kValidation, "density_neighbors must be positive");
  if (m.kde_grid_points < 2) throw Error(ErrorCode::kValidation, "kde_grid_points must be at least 2");
  if (r.scale.ransac_iterations < 1 || r.scale.sample_size < 1 || r.scale.irls_steps < 0)
    throw Error(ErrorCode::kValidation, "scale iteration counts must be positive");
  if (r.keyframe_stride < 1) throw Error(ErrorCode::kValidation, "keyframe_stride must be positive");
  return c;
}

PipelineConfig parse_config(const std::string& text) {
  auto kv = KeyValues::parse(text);
  auto c = apply_config(kv);
  kv.require_consumed();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) { return parse_config(read_text_file(path)); }

std::string to_text(const PipelineConfig& c) {
  const auto& m = c.metrics;
  const auto& r = c.reconstruction;
  std::ostringstream os;
  os << "[metrics]\n"
     << "collision_threshold_m = " << num(m.collision_threshold_m) << '\n'
     << "stationary_threshold_m = " << num(m.stationary_threshold_m) << '\n'
     << "moving_speed_threshold = " << num(m.moving_speed_threshold) << '\n'
     << "density_neighbors = " << m.density_neighbors << '\n'
     << "nn_radius_m = " << num(m.nn_radius_m) << '\n'
     << "internal_diversity_subsample = " << m.internal_diversity_subsample << '\n'
     << "internal_diversity_band = " << num(m.internal_diversity_band) << '\n'
     << "kde_bandwidth = " << num(m.kde_bandwidth) << '\n'
     << "kde_grid_points = " << m.kde_grid_points << '\n'
     << "geo_conf_low_threshold = " << num(m.geo_conf_low_threshold) << '\n'
     << "fd_max_density = " << num(m.fd_max_density) << '\n'
     << "fd_bins = " << m.fd_bins << '\n'
     << "polar_angle_bins = " << m.polar_angle_bins << '\n'
     << "polar_radius_bins = " << m.polar_radius_bins << '\n'
     << "\n[smoother]\n"
     << "accel_sigma = " << num(m.smoother.accel_sigma) << '\n'
     << "measurement_sigma = " << num(m.smoother.measurement_sigma) << '\n'
     << "initial_velocity_var = " << num(m.smoother.initial_velocity_var) << '\n'
     << "\n[scale]\n"
     << "ransac_iterations = " << r.scale.ransac_iterations << '\n'
     << "sample_size = " << r.scale.sample_size << '\n'
     << "irls_steps = " << r.scale.irls_steps << '\n'
     << "huber_delta = " << num(r.scale.huber_delta) << '\n'
     << "inlier_residual_fraction = " << num(r.scale.inlier_residual_fraction) << '\n'
     << "min_pixels = " << r.scale.min_pixels << '\n'
     << "min_inlier_fraction = " << num(r.scale.min_inlier_fraction) << '\n'
     << "keyframe_stride = " << r.keyframe_stride << '\n'
     << "\n[height]\n"
     << "min_m = " << num(r.height.min_m) << '\n'
     << "max_m = " << num(r.height.max_m) << '\n'
     << "target_m = " << num(r.height.target_m) << '\n'
     << "\n[plane]\n"
     << "inlier_threshold_m = " << num(r.plane.inlier_threshold_m) << '\n'
     << "ransac_iterations = " << r.plane.ransac_iterations << '\n'
     << "\n[staticity]\n"
     << "max_translation_m = " << num(r.staticity.max_translation_m) << '\n'
     << "max_rotation_deg = " << num(r.staticity.max_rotation_deg) << '\n'
     << "\n[depth]\n"
     << "fallback_radius = " << r.depth_fallback_radius << '\n'
     << "\n[accumulation]\n"
     << "min_unique_tracks = " << c.accumulation.min_unique_tracks << '\n'
     << "min_detections = " << c.accumulation.min_detections << '\n';
  return os.str();
}

}  // namespace pedeval::pipeline
