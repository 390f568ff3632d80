#include "pedeval/geometry/homography.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include "pedeval/error.hpp"
#include "pedeval/trajdata/io.hpp"

namespace pedeval::geometry {

Homography::Homography(const Eigen::Matrix3d& world_from_pixel) : h_(world_from_pixel) {
  if (!h_.allFinite()) throw Error(ErrorCode::kValidation, "homography has non-finite entries");
  const double scale = h_.cwiseAbs().maxCoeff();
  if (scale == 0.0 || std::abs(h_.determinant()) <= 1e-12 * scale * scale * scale) {
    throw Error(ErrorCode::kDegenerate, "homography matrix is singular");
  }
}

Homography Homography::from_row_major(std::span<const double> values) {
  if (values.size() != 9) throw Error(ErrorCode::kParse, "homography needs 9 values");
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m(r, c) = values[static_cast<std::size_t>(3 * r + c)];
  }
  return Homography(m);
}

std::optional<Point2> Homography::project(Point2 pixel) const {
  const Eigen::Vector3d q = h_ * Eigen::Vector3d(pixel.x, pixel.y, 1.0);
  if (std::abs(q.z()) < 1e-12) return std::nullopt;
  return Point2{q.x() / q.z(), q.y() / q.z()};
}

HomographyProjection project_homography(const Homography& h, std::span<const Point2> pixels) {
  HomographyProjection out;
  out.points.reserve(pixels.size());
  for (const Point2& p : pixels) {
    out.points.push_back(h.project(p));
    if (!out.points.back()) ++out.dropped;
  }
  return out;
}

Homography parse_homography(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "homography entry is not a number", token);
    }
  }
  if (values.size() != 9) {
    throw Error(ErrorCode::kParse, "homography file must hold exactly 9 reals",
                std::to_string(values.size()) + " found");
  }
  return Homography::from_row_major(values);
}

Homography read_homography(const std::filesystem::path& path) {
  return parse_homography(read_text_file(path));
}

}  // namespace pedeval::geometry
