#include "pedeval/trajdata/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "pedeval/error.hpp"

namespace pedeval {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kValidation: return "validation_error";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kDegenerate: return "degenerate_input";
    case ErrorCode::kInternal: return "internal_error";
  }
  return "unknown";
}

Trajectory::Trajectory(AgentId agent_id, std::int64_t start_frame, std::vector<Point2> positions,
                       std::vector<double> confidence, std::vector<double> geo_confidence)
    : agent_id_(agent_id),
      start_frame_(start_frame),
      positions_(std::move(positions)),
      confidence_(std::move(confidence)),
      geo_confidence_(std::move(geo_confidence)) {
  const std::string ctx = "agent " + std::to_string(agent_id_);
  if (positions_.empty()) throw Error(ErrorCode::kValidation, "trajectory has no points", ctx);
  if (start_frame_ < 0) throw Error(ErrorCode::kValidation, "negative start frame", ctx);
  for (const Point2& p : positions_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::kValidation, "non-finite trajectory coordinate", ctx);
    }
  }
  if (!confidence_.empty() && confidence_.size() != positions_.size()) {
    throw Error(ErrorCode::kValidation, "confidence count differs from point count", ctx);
  }
  if (!geo_confidence_.empty() && geo_confidence_.size() != positions_.size()) {
    throw Error(ErrorCode::kValidation, "geometry confidence count differs from point count", ctx);
  }
}

Scene::Scene(std::vector<Trajectory> trajectories, double fps, std::int64_t frame_count)
    : trajectories_(std::move(trajectories)), fps_(fps), frame_count_(frame_count) {
  if (!(fps_ > 0.0) || !std::isfinite(fps_)) {
    throw Error(ErrorCode::kValidation, "fps must be positive and finite");
  }
  if (frame_count_ < 0) throw Error(ErrorCode::kValidation, "negative frame count");
  std::sort(trajectories_.begin(), trajectories_.end(),
            [](const Trajectory& a, const Trajectory& b) { return a.agent_id() < b.agent_id(); });
  for (std::size_t i = 0; i < trajectories_.size(); ++i) {
    const Trajectory& t = trajectories_[i];
    if (i > 0 && trajectories_[i - 1].agent_id() == t.agent_id()) {
      throw Error(ErrorCode::kValidation, "duplicate agent id",
                  "agent " + std::to_string(t.agent_id()));
    }
    if (t.end_frame() > frame_count_ - 1) {
      throw Error(ErrorCode::kValidation, "trajectory extends past the scene frame count",
                  "agent " + std::to_string(t.agent_id()));
    }
  }
}

Scene Scene::with_inferred_frames(std::vector<Trajectory> trajectories, double fps) {
  std::int64_t frames = 0;
  for (const Trajectory& t : trajectories) frames = std::max(frames, t.end_frame() + 1);
  return Scene(std::move(trajectories), fps, frames);
}

const Trajectory* Scene::find(AgentId id) const {
  auto it = std::lower_bound(trajectories_.begin(), trajectories_.end(), id,
                             [](const Trajectory& t, AgentId v) { return t.agent_id() < v; });
  return (it != trajectories_.end() && it->agent_id() == id) ? &*it : nullptr;
}

std::vector<std::vector<ActiveEntry>> active_sets(const Scene& scene) {
  std::vector<std::vector<ActiveEntry>> sets(static_cast<std::size_t>(scene.frame_count()));
  const auto trajectories = scene.trajectories();
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const Trajectory& t = trajectories[i];
    for (std::size_t j = 0; j < t.length(); ++j) {
      sets[static_cast<std::size_t>(t.start_frame()) + j].push_back({i, j});
    }
  }
  return sets;
}

TrackletSet::TrackletSet(std::vector<Detection> detections, std::optional<ImageSize> image)
    : detections_(std::move(detections)), image_(image) {
  for (const Detection& d : detections_) {
    if (!(d.width > 0.0) || !(d.height > 0.0)) {
      throw Error(ErrorCode::kValidation, "bounding box must have positive size",
                  "frame " + std::to_string(d.frame) + " id " + std::to_string(d.track_id));
    }
    if (d.frame < 0) throw Error(ErrorCode::kValidation, "negative frame index");
  }
  std::sort(detections_.begin(), detections_.end(), [](const Detection& a, const Detection& b) {
    return a.track_id != b.track_id ? a.track_id < b.track_id : a.frame < b.frame;
  });
  for (std::size_t i = 1; i < detections_.size(); ++i) {
    const Detection& a = detections_[i - 1];
    const Detection& b = detections_[i];
    if (a.track_id == b.track_id && a.frame == b.frame) {
      throw Error(ErrorCode::kValidation, "duplicate (frame, track id) detection",
                  "frame " + std::to_string(b.frame) + " id " + std::to_string(b.track_id));
    }
  }
}

std::vector<PixelTrack> ground_contact_points(const TrackletSet& tracklets) {
  std::vector<PixelTrack> tracks;
  for (const Detection& d : tracklets.detections()) {
    if (tracks.empty() || tracks.back().track_id != d.track_id) {
      tracks.push_back(PixelTrack{d.track_id, {}});
    }
    tracks.back().points.push_back(
        PixelPoint{d.frame, d.left + d.width / 2.0, d.top + d.height, d.height, d.confidence});
  }
  return tracks;
}

}  // namespace pedeval
