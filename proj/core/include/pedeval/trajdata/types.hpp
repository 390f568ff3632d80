#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pedeval {

using AgentId = std::int64_t;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double norm(Point2 p) { return std::sqrt(p.x * p.x + p.y * p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Time-indexed BEV positions (meters) of one agent over a contiguous frame
/// span. Point j belongs to frame start_frame() + j.
///
/// Per-point tracker confidences and geometry confidences are optional; an
/// empty vector means "not supplied" and confidence() then reports 1.0.
class Trajectory {
 public:
  Trajectory(AgentId agent_id, std::int64_t start_frame, std::vector<Point2> positions,
             std::vector<double> confidence = {}, std::vector<double> geo_confidence = {});

  AgentId agent_id() const noexcept { return agent_id_; }
  std::int64_t start_frame() const noexcept { return start_frame_; }
  std::int64_t end_frame() const noexcept {
    return start_frame_ + static_cast<std::int64_t>(positions_.size()) - 1;
  }
  std::size_t length() const noexcept { return positions_.size(); }
  bool active_at(std::int64_t frame) const noexcept {
    return frame >= start_frame_ && frame <= end_frame();
  }

  std::span<const Point2> positions() const noexcept { return positions_; }
  Point2 at_frame(std::int64_t frame) const { return positions_.at(frame - start_frame_); }

  bool has_confidence() const noexcept { return !confidence_.empty(); }
  bool has_geo_confidence() const noexcept { return !geo_confidence_.empty(); }
  double confidence(std::size_t j) const { return confidence_.empty() ? 1.0 : confidence_.at(j); }
  std::span<const double> confidences() const noexcept { return confidence_; }
  std::span<const double> geo_confidences() const noexcept { return geo_confidence_; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  AgentId agent_id_;
  std::int64_t start_frame_;
  std::vector<Point2> positions_;
  std::vector<double> confidence_;
  std::vector<double> geo_confidence_;
};

/// The set of trajectories extracted from one video, with its frame rate.
/// Trajectories are kept sorted by agent id.
class Scene {
 public:
  Scene(std::vector<Trajectory> trajectories, double fps, std::int64_t frame_count);

  /// frame_count inferred as (max end frame + 1), or 0 when empty.
  static Scene with_inferred_frames(std::vector<Trajectory> trajectories, double fps);

  std::span<const Trajectory> trajectories() const noexcept { return trajectories_; }
  std::size_t size() const noexcept { return trajectories_.size(); }
  bool empty() const noexcept { return trajectories_.empty(); }
  double fps() const noexcept { return fps_; }
  std::int64_t frame_count() const noexcept { return frame_count_; }
  const Trajectory* find(AgentId id) const;

  friend bool operator==(const Scene&, const Scene&) = default;

 private:
  std::vector<Trajectory> trajectories_;
  double fps_;
  std::int64_t frame_count_;
};

/// Reference to point `index` of trajectory `trajectory` in a Scene.
struct ActiveEntry {
  std::size_t trajectory;
  std::size_t index;
};

/// Per-frame active sets A_k; entry k lists every agent present at frame k.
std::vector<std::vector<ActiveEntry>> active_sets(const Scene& scene);

struct ImageSize {
  int width = 0;
  int height = 0;
};

struct Detection {
  std::int64_t frame = 0;  // 0-based
  AgentId track_id = 0;
  double left = 0.0;
  double top = 0.0;
  double width = 0.0;
  double height = 0.0;
  double confidence = 1.0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// Pixel-space tracker output. Detections are sorted by (track_id, frame) and
/// (frame, track_id) pairs are unique.
class TrackletSet {
 public:
  TrackletSet(std::vector<Detection> detections, std::optional<ImageSize> image);

  std::span<const Detection> detections() const noexcept { return detections_; }
  std::optional<ImageSize> image() const noexcept { return image_; }
  std::size_t size() const noexcept { return detections_.size(); }

 private:
  std::vector<Detection> detections_;
  std::optional<ImageSize> image_;
};

struct PixelPoint {
  std::int64_t frame = 0;
  double u = 0.0;
  double v = 0.0;
  double box_height = 0.0;
  double confidence = 1.0;
};

struct PixelTrack {
  AgentId track_id = 0;
  std::vector<PixelPoint> points;  // ordered by frame
};

/// Bottom-midpoint of every box: u = left + width/2, v = top + height.
/// One PixelTrack per track id, ordered by id.
std::vector<PixelTrack> ground_contact_points(const TrackletSet& tracklets);

}  // namespace pedeval
