#include "pedeval/pipeline/i2v.hpp"

#include "pedeval/error.hpp"
#include "tracks.hpp"

namespace pedeval::pipeline {

I2VResult project_i2v(const TrackletSet& tracklets, const geometry::Homography& homography, double fps) {
  if (!(fps > 0.0)) throw Error(ErrorCode::kValidation, "fps must be positive", "fps");
  std::vector<detail::TrackInput> tracks;
  std::size_t dropped = 0;
  for (const auto& pt : ground_contact_points(tracklets)) {
    detail::TrackInput in{pt.track_id, {}};
    in.points.reserve(pt.points.size());
    for (const auto& p : pt.points) {
      auto world = homography.project({p.u, p.v});
      if (!world) ++dropped;
      in.points.push_back({p.frame, world, p.confidence, std::nullopt});
    }
    tracks.push_back(std::move(in));
  }
  auto built = detail::build_trajectories(tracks, false);
  return {Scene::with_inferred_frames(std::move(built.trajectories), fps), dropped, built.splits};
}

TrackletSet scene_to_tracklets(const Scene& scene, const geometry::Homography& homography, const SyntheticBox& box) {
  const auto pixel_from_world = homography.inverse();
  std::vector<Detection> dets;
  for (const auto& t : scene.trajectories()) {
    const auto pts = t.positions();
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const auto px = pixel_from_world.project(pts[j]);
      if (!px) {
        throw Error(ErrorCode::kDegenerate, "scene point maps to the line at infinity",
                    "agent " + std::to_string(t.agent_id()));
      }
      dets.push_back({t.start_frame() + static_cast<std::int64_t>(j), t.agent_id(), px->x - box.width_px / 2.0,
                      px->y - box.height_px, box.width_px, box.height_px, t.confidence(j)});
    }
  }
  return TrackletSet(std::move(dets), std::nullopt);
}

}  // namespace pedeval::pipeline
