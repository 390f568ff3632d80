#include "pedeval/pipeline/t2v.hpp"

#include <json.hpp>

#include "pedeval/error.hpp"
#include "tracks.hpp"

namespace pedeval::pipeline {
namespace {

std::uint64_t frame_seed(std::uint64_t seed, std::int64_t frame) {
  return seed ^ (static_cast<std::uint64_t>(frame) * 0x9E3779B97F4A7C15ull);
}

ReconstructionResult reject(ReconstructionResult r, std::string reason, std::optional<std::int64_t> frame = {}) {
  r.rejection = Rejection{std::move(reason), frame};
  return r;
}

}  // namespace

ReconstructionResult reconstruct_t2v(const ReconstructionInput& in, const ReconstructionConfig& config,
                                     std::uint64_t seed) {
  if (!(in.fps > 0.0)) throw Error(ErrorCode::kValidation, "fps must be positive", "fps");
  if (config.keyframe_stride < 1) throw Error(ErrorCode::kValidation, "keyframe stride must be positive");
  ReconstructionResult r;
  auto& diag = r.diagnostics;
  const auto image = in.tracklets.image();
  const int radius = config.depth_fallback_radius;

  std::map<std::int64_t, double> keyframe_lambdas;
  for (const auto& [frame, metric] : in.metric_depth) {
    if (frame % config.keyframe_stride != 0) continue;
    const auto* rel = geometry::nearest_raster(in.relative_depth, frame);
    if (!rel) throw Error(ErrorCode::kValidation, "no relative depth for keyframe", "frame " + std::to_string(frame));
    if (!in.relative_depth.contains(frame)) ++diag["keyframe_relative_depth_nearest"];
    const auto est = geometry::estimate_scale(*rel, metric, config.scale, frame_seed(seed, frame));
    r.keyframes.push_back({frame, est});
    if (!est.valid()) return reject(std::move(r), geometry::to_string(est.status), frame);
    keyframe_lambdas[frame] = est.lambda;
  }
  if (keyframe_lambdas.empty()) return reject(std::move(r), "no_keyframes");

  geometry::ScaleSchedule schedule(keyframe_lambdas);
  const auto heights =
      geometry::estimate_person_heights(in.tracklets, in.cameras, schedule, in.relative_depth, image, radius);
  std::vector<double> valid_heights;
  for (const auto& h : heights)
    if (h) valid_heights.push_back(*h);
  diag["heights_missing"] = static_cast<std::int64_t>(heights.size() - valid_heights.size());
  if (valid_heights.empty()) return reject(std::move(r), "no_heights");

  std::vector<double> lambdas;
  for (const auto& [frame, l] : keyframe_lambdas) lambdas.push_back(l);
  r.anthropometric = geometry::anthropometric_correction(valid_heights, lambdas, config.height);
  if (r.anthropometric->rejected) return reject(std::move(r), "nonpositive_height");
  schedule = schedule.scaled(r.anthropometric->factor);

  if (in.cameras.size() >= 2) {
    double mean_lambda = 0.0;
    for (const auto& [frame, l] : schedule.keyframes()) mean_lambda += l;
    mean_lambda /= static_cast<double>(schedule.keyframes().size());
    r.camera_static = geometry::staticity_check(in.cameras, mean_lambda, config.staticity);
  }

  // Un-project every ground-contact point; keep world points for the plane.
  struct Located {
    std::size_t track;
    std::size_t point;
  };
  const auto tracks_px = ground_contact_points(in.tracklets);
  std::vector<detail::TrackInput> tracks;
  std::vector<Eigen::Vector3d> world;
  std::vector<Located> where;
  for (std::size_t t = 0; t < tracks_px.size(); ++t) {
    detail::TrackInput ti{tracks_px[t].track_id, {}};
    for (const auto& p : tracks_px[t].points) {
      detail::TrackPoint tp{p.frame, std::nullopt, p.confidence, std::nullopt};
      const auto cam = in.cameras.find(p.frame);
      const auto* depth = geometry::nearest_raster(in.relative_depth, p.frame);
      if (cam == in.cameras.end()) {
        ++diag["dropped_no_camera"];
      } else if (!depth) {
        ++diag["dropped_no_depth"];
      } else {
        if (!in.relative_depth.contains(p.frame)) ++diag["depth_nearest_frame"];
        const auto w = geometry::unproject_to_world(cam->second, schedule.at(p.frame), *depth, {p.u, p.v}, image,
                                                    radius);
        if (!w) {
          ++diag["dropped_no_depth"];
        } else {
          world.push_back(*w);
          where.push_back({t, ti.points.size()});
          tp.position = Point2{};  // filled after the plane fit
        }
      }
      if (in.geo_confidence) {
        const auto* g = geometry::nearest_raster(*in.geo_confidence, p.frame);
        const auto v = g ? geometry::sample_depth(*g, Point2{p.u, p.v}, image, radius) : std::nullopt;
        if (!v) ++diag["geo_conf_missing"];
        tp.geo_confidence = v.value_or(1.0);
      }
      ti.points.push_back(tp);
    }
    tracks.push_back(std::move(ti));
  }
  diag["points_total"] = static_cast<std::int64_t>(in.tracklets.size());
  diag["points_unprojected"] = static_cast<std::int64_t>(world.size());

  Eigen::Vector3d up = Eigen::Vector3d::Zero();
  for (const auto& [frame, cam] : in.cameras) up += cam.R * Eigen::Vector3d(0.0, -1.0, 0.0);
  std::optional<Eigen::Vector3d> up_hint;
  if (up.norm() > 0.0) up_hint = up.normalized();
  try {
    r.plane = geometry::fit_ground_plane(world, config.plane, seed, up_hint);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerate) throw;
    return reject(std::move(r), "degenerate_ground_plane");
  }
  diag["plane_inliers"] = static_cast<std::int64_t>(r.plane->n_inliers);

  for (std::size_t i = 0; i < world.size(); ++i)
    tracks[where[i].track].points[where[i].point].position = r.plane->to_bev(world[i]);

  auto built = detail::build_trajectories(tracks, in.geo_confidence != nullptr);
  diag["split_tracks"] = static_cast<std::int64_t>(built.splits);
  r.scene = Scene::with_inferred_frames(std::move(built.trajectories), in.fps);
  return r;
}

std::string to_json(const ReconstructionResult& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["status"] = r.rejected() ? "rejected" : "ok";
  if (r.rejection) {
    j["rejection"] = {{"reason", r.rejection->reason},
                      {"frame", r.rejection->frame ? ordered_json(*r.rejection->frame) : ordered_json(nullptr)}};
  }
  j["keyframes"] = ordered_json::array();
  for (const auto& k : r.keyframes) {
    const auto& e = k.estimate;
    j["keyframes"].push_back({{"frame", k.frame},
                              {"status", geometry::to_string(e.status)},
                              {"lambda", e.lambda},
                              {"inlier_fraction", e.inlier_fraction},
                              {"n_pixels", e.n_pixels},
                              {"n_inliers", e.n_inliers},
                              {"residual_median", e.residual_median},
                              {"inlier_threshold", e.inlier_threshold}});
  }
  if (r.anthropometric) {
    const auto& a = *r.anthropometric;
    j["anthropometric"] = {{"corrected", a.corrected},
                           {"factor", a.factor},
                           {"mean_height_before", a.mean_height_before},
                           {"mean_height_after", a.mean_height_after}};
  }
  if (r.plane) {
    const auto& p = *r.plane;
    j["ground_plane"] = {{"normal", {p.normal.x(), p.normal.y(), p.normal.z()}},
                         {"origin", {p.origin.x(), p.origin.y(), p.origin.z()}},
                         {"axis_x", {p.axis_x.x(), p.axis_x.y(), p.axis_x.z()}},
                         {"inliers", p.n_inliers}};
  }
  j["camera_static"] = r.camera_static ? ordered_json(*r.camera_static) : ordered_json(nullptr);
  j["diagnostics"] = ordered_json::object();
  for (const auto& [k, v] : r.diagnostics) j["diagnostics"][k] = v;
  if (r.scene) j["agents"] = r.scene->size();
  return j.dump(2) + "\n";
}

}  // namespace pedeval::pipeline
