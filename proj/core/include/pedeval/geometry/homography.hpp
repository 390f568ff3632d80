#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "pedeval/trajdata/types.hpp"

namespace pedeval::geometry {

/// World-from-pixel ground homography (meters per homogeneous pixel).
class Homography {
 public:
  /// Throws Error(kDegenerate) when the matrix is singular.
  explicit Homography(const Eigen::Matrix3d& world_from_pixel);
  static Homography from_row_major(std::span<const double> values);

  const Eigen::Matrix3d& matrix() const noexcept { return h_; }
  Homography inverse() const { return Homography(h_.inverse()); }

  /// [x, y, w]^T = H [u, v, 1]^T -> (x/w, y/w); nullopt when |w| < 1e-12.
  std::optional<Point2> project(Point2 pixel) const;

 private:
  Eigen::Matrix3d h_;
};

struct HomographyProjection {
  std::vector<std::optional<Point2>> points;  // aligned with the input
  std::size_t dropped = 0;
};

HomographyProjection project_homography(const Homography& h, std::span<const Point2> pixels);

/// Nine whitespace-separated reals, row-major.
Homography parse_homography(std::string_view text);
Homography read_homography(const std::filesystem::path& path);

}  // namespace pedeval::geometry
