#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include <Eigen/Core>

#include "pedeval/trajdata/types.hpp"

namespace pedeval::geometry {

/// Ground plane with an orthonormal in-plane basis defining the BEV frame.
/// axis_x is the first principal direction of the fitted inliers and
/// axis_y = normal x axis_x, so (axis_x, axis_y, normal) is right-handed.
struct GroundPlane {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::Vector3d axis_x = Eigen::Vector3d::UnitX();
  Eigen::Vector3d axis_y = Eigen::Vector3d::UnitY();
  std::size_t n_inliers = 0;

  double signed_distance(const Eigen::Vector3d& p) const { return normal.dot(p - origin); }
  Point2 to_bev(const Eigen::Vector3d& p) const {
    const Eigen::Vector3d d = p - origin;
    return {axis_x.dot(d), axis_y.dot(d)};
  }
};

struct PlaneFitConfig {
  double inlier_threshold_m = 0.2;
  int ransac_iterations = 200;
};

/// RANSAC over point triples followed by a total-least-squares refit on the
/// inliers. When `up_hint` is given the normal is oriented towards it,
/// otherwise its largest-magnitude component is made positive.
/// Throws Error(kDegenerate) for fewer than 3 points or collinear input.
GroundPlane fit_ground_plane(std::span<const Eigen::Vector3d> points, const PlaneFitConfig& config = {},
                             std::uint64_t seed = 0,
                             std::optional<Eigen::Vector3d> up_hint = std::nullopt);

}  // namespace pedeval::geometry
