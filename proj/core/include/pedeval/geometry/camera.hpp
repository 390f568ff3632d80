#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "pedeval/geometry/depth.hpp"
#include "pedeval/trajdata/types.hpp"

namespace pedeval::geometry {

/// Pinhole camera for one frame. R maps camera to world; t is the camera
/// position in world units before metric alignment (scaled by lambda).
struct CameraFrame {
  std::int64_t frame = 0;
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Eigen::Vector3d t = Eigen::Vector3d::Zero();

  /// Throws Error(kValidation) unless fx, fy > 0 and R is orthonormal to 1e-6.
  void validate() const;
};

using CameraSequence = std::map<std::int64_t, CameraFrame>;

/// JSON array of {frame, fx, fy, cx, cy, R: [9 row-major], t: [3]}.
CameraSequence parse_cameras(std::string_view json);
CameraSequence read_cameras(const std::filesystem::path& path);
std::string write_cameras(const CameraSequence& cameras);

/// Camera-frame point from a pixel and a metric camera depth Z.
Eigen::Vector3d backproject(const CameraFrame& cam, Point2 pixel, double z_cam);

/// world = R * [X, Y, Z]_cam + lambda * t.
Eigen::Vector3d camera_to_world(const CameraFrame& cam, double lambda, const Eigen::Vector3d& p_cam);
Eigen::Vector3d world_to_camera(const CameraFrame& cam, double lambda, const Eigen::Vector3d& p_world);

/// Pinhole projection of a world point; nullopt behind the camera.
std::optional<Point2> project_to_pixel(const CameraFrame& cam, double lambda,
                                       const Eigen::Vector3d& p_world);

/// Un-projects one pixel with Z_cam = lambda * depth(u, v). nullopt when no
/// valid depth lies within the fallback radius.
std::optional<Eigen::Vector3d> unproject_to_world(const CameraFrame& cam, double lambda,
                                                  const DepthRaster& depth, Point2 pixel,
                                                  std::optional<ImageSize> image = std::nullopt,
                                                  int fallback_radius = 3);

struct Unprojection {
  std::vector<std::optional<Eigen::Vector3d>> points;  // aligned with input
  std::size_t dropped = 0;
};

Unprojection unproject_to_world(const CameraFrame& cam, double lambda, const DepthRaster& depth,
                                std::span<const Point2> pixels,
                                std::optional<ImageSize> image = std::nullopt, int fallback_radius = 3);

struct StaticityThresholds {
  double max_translation_m = 0.05;
  double max_rotation_deg = 0.5;
};

/// Pose-delta test: every consecutive pair must move less than the
/// translation threshold (after lambda scaling) and rotate less than the
/// angle threshold. Requires at least two frames.
bool staticity_check(std::span<const CameraFrame> cameras, double lambda = 1.0,
                     const StaticityThresholds& thresholds = {});
bool staticity_check(const CameraSequence& cameras, double lambda = 1.0,
                     const StaticityThresholds& thresholds = {});

}  // namespace pedeval::geometry
