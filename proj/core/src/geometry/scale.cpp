#include "pedeval/geometry/scale.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "pedeval/error.hpp"

namespace pedeval::geometry {

const char* to_string(ScaleStatus status) {
  switch (status) {
    case ScaleStatus::kOk: return "ok";
    case ScaleStatus::kTooFewPixels: return "too_few_pixels";
    case ScaleStatus::kTooFewInliers: return "too_few_inliers";
  }
  return "unknown";
}

double huber_scale(std::span<const double> rel, std::span<const double> metric, double delta, int steps) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    num += rel[i] * metric[i];
    den += rel[i] * rel[i];
  }
  if (!(den > 0.0)) return 0.0;
  double lambda = num / den;
  for (int s = 0; s < steps; ++s) {
    num = den = 0.0;
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const double e = std::abs(lambda * rel[i] - metric[i]);
      const double w = e <= delta ? 1.0 : delta / e;
      num += w * rel[i] * metric[i];
      den += w * rel[i] * rel[i];
    }
    if (!(den > 0.0)) break;
    const double next = num / den;
    if (next == lambda) break;
    lambda = next;
  }
  return lambda;
}

namespace {

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double hi = v[mid];
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

std::int64_t count_inliers(double lambda, const std::vector<double>& rel, const std::vector<double>& met,
                           double threshold) {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (std::abs(lambda * rel[i] - met[i]) < threshold) ++n;
  }
  return n;
}

}  // namespace

ScaleEstimate estimate_scale(const DepthRaster& relative, const DepthRaster& metric, const ScaleConfig& config,
                             std::uint64_t seed) {
  if (relative.width() != metric.width() || relative.height() != metric.height()) {
    throw Error(ErrorCode::kValidation, "relative and metric depth rasters differ in size");
  }
  std::vector<double> rel, met;
  for (int y = 0; y < relative.height(); ++y) {
    for (int x = 0; x < relative.width(); ++x) {
      if (relative.valid(x, y) && metric.valid(x, y)) {
        rel.push_back(relative.at(x, y));
        met.push_back(metric.at(x, y));
      }
    }
  }

  ScaleEstimate est;
  est.n_pixels = static_cast<std::int64_t>(rel.size());
  if (est.n_pixels < config.min_pixels || rel.empty()) {
    est.status = ScaleStatus::kTooFewPixels;
    return est;
  }
  est.inlier_threshold = config.inlier_residual_fraction * median_of(met);

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(rel.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t sample = std::min<std::size_t>(static_cast<std::size_t>(std::max(config.sample_size, 1)),
                                                   rel.size());
  std::vector<double> srel(sample), smet(sample);

  double best_lambda = 0.0;
  std::int64_t best_count = -1;
  for (int it = 0; it < config.ransac_iterations; ++it) {
    for (std::size_t i = 0; i < sample; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
      std::swap(order[i], order[pick(rng)]);
      srel[i] = rel[order[i]];
      smet[i] = met[order[i]];
    }
    const double lambda = huber_scale(srel, smet, config.huber_delta, config.irls_steps);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) continue;
    const std::int64_t count = count_inliers(lambda, rel, met, est.inlier_threshold);
    if (count > best_count) {
      best_count = count;
      best_lambda = lambda;
    }
  }
  if (best_count <= 0) {
    est.status = ScaleStatus::kTooFewInliers;
    return est;
  }

  std::vector<double> irel, imet;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (std::abs(best_lambda * rel[i] - met[i]) < est.inlier_threshold) {
      irel.push_back(rel[i]);
      imet.push_back(met[i]);
    }
  }
  const double refit = huber_scale(irel, imet, config.huber_delta, config.irls_steps);
  est.lambda = (refit > 0.0 && std::isfinite(refit)) ? refit : best_lambda;
  est.n_inliers = count_inliers(est.lambda, rel, met, est.inlier_threshold);
  est.inlier_fraction = static_cast<double>(est.n_inliers) / static_cast<double>(est.n_pixels);

  std::vector<double> residuals(rel.size());
  for (std::size_t i = 0; i < rel.size(); ++i) residuals[i] = std::abs(est.lambda * rel[i] - met[i]);
  est.residual_median = median_of(std::move(residuals));

  est.status = est.inlier_fraction >= config.min_inlier_fraction ? ScaleStatus::kOk : ScaleStatus::kTooFewInliers;
  return est;
}

ScaleSchedule::ScaleSchedule(std::map<std::int64_t, double> keyframes) : keyframes_(std::move(keyframes)) {
  for (const auto& [frame, lambda] : keyframes_) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw Error(ErrorCode::kValidation, "scale must be positive and finite", "frame " + std::to_string(frame));
    }
  }
}

double ScaleSchedule::at(std::int64_t frame) const {
  if (keyframes_.empty()) throw Error(ErrorCode::kValidation, "empty scale schedule");
  auto hi = keyframes_.lower_bound(frame);
  if (hi == keyframes_.end()) return std::prev(hi)->second;
  if (hi->first == frame || hi == keyframes_.begin()) return hi->second;
  auto lo = std::prev(hi);
  const double a = static_cast<double>(frame - lo->first) / static_cast<double>(hi->first - lo->first);
  return (1.0 - a) * lo->second + a * hi->second;
}

ScaleSchedule ScaleSchedule::scaled(double factor) const {
  std::map<std::int64_t, double> k = keyframes_;
  for (auto& [frame, lambda] : k) lambda *= factor;
  return ScaleSchedule(std::move(k));
}

std::vector<std::optional<double>> estimate_person_heights(const TrackletSet& tracklets,
                                                           const CameraSequence& cameras,
                                                           const ScaleSchedule& scales,
                                                           const DepthSequence& depth,
                                                           std::optional<ImageSize> image, int fallback_radius) {
  std::vector<std::optional<double>> heights;
  heights.reserve(tracklets.size());
  for (const Detection& d : tracklets.detections()) {
    const auto cam = cameras.find(d.frame);
    const DepthRaster* raster = nearest_raster(depth, d.frame);
    if (cam == cameras.end() || raster == nullptr) {
      heights.emplace_back();
      continue;
    }
    const Point2 foot{d.left + d.width / 2.0, d.top + d.height};
    const auto rel = sample_depth(*raster, foot, image, fallback_radius);
    if (!rel) {
      heights.emplace_back();
      continue;
    }
    const double z_cam = scales.at(d.frame) * *rel;
    heights.emplace_back(d.height * z_cam / cam->second.fy);
  }
  return heights;
}

AnthropometricResult anthropometric_correction(std::span<const double> heights, std::span<const double> lambdas,
                                               const HeightPrior& prior) {
  if (heights.empty()) throw Error(ErrorCode::kValidation, "anthropometric check needs at least one height");
  AnthropometricResult r;
  r.lambdas.assign(lambdas.begin(), lambdas.end());
  r.heights.assign(heights.begin(), heights.end());
  r.mean_height_before = std::accumulate(heights.begin(), heights.end(), 0.0) / static_cast<double>(heights.size());
  r.mean_height_after = r.mean_height_before;
  if (!(r.mean_height_before > 0.0) || !std::isfinite(r.mean_height_before)) {
    r.rejected = true;
    return r;
  }
  if (r.mean_height_before > prior.min_m && r.mean_height_before < prior.max_m) return r;

  r.corrected = true;
  r.factor = prior.target_m / r.mean_height_before;
  for (double& l : r.lambdas) l *= r.factor;
  for (double& h : r.heights) h *= r.factor;
  r.mean_height_after = std::accumulate(r.heights.begin(), r.heights.end(), 0.0) / static_cast<double>(r.heights.size());
  return r;
}

}  // namespace pedeval::geometry
