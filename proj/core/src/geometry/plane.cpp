#include "pedeval/geometry/plane.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "pedeval/error.hpp"

namespace pedeval::geometry {
namespace {

struct PrincipalAxes {
  Eigen::Vector3d centroid;
  Eigen::Vector3d eigenvalues;   // ascending
  Eigen::Matrix3d eigenvectors;  // columns match eigenvalues
};

PrincipalAxes principal_axes(std::span<const Eigen::Vector3d> pts, const std::vector<std::size_t>& idx) {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (std::size_t i : idx) c += pts[i];
  c /= static_cast<double>(idx.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (std::size_t i : idx) {
    const Eigen::Vector3d d = pts[i] - c;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(idx.size());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  return {c, solver.eigenvalues(), solver.eigenvectors()};
}

bool collinear(const PrincipalAxes& axes) {
  return !(axes.eigenvalues(1) > 1e-12 * std::max(axes.eigenvalues(2), 1e-300));
}

Eigen::Vector3d positive_dominant(Eigen::Vector3d v) {
  Eigen::Index i = 0;
  v.cwiseAbs().maxCoeff(&i);
  return v(i) < 0.0 ? Eigen::Vector3d(-v) : v;
}

}  // namespace

GroundPlane fit_ground_plane(std::span<const Eigen::Vector3d> points, const PlaneFitConfig& config,
                             std::uint64_t seed, std::optional<Eigen::Vector3d> up_hint) {
  if (points.size() < 3) throw Error(ErrorCode::kDegenerate, "plane fit needs at least 3 points");
  std::vector<std::size_t> all(points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (collinear(principal_axes(points, all))) {
    throw Error(ErrorCode::kDegenerate, "ground-contact points are collinear");
  }

  std::vector<std::size_t> inliers = all;
  if (points.size() > 3) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
    std::size_t best = 0;
    std::vector<std::size_t> current;
    for (int it = 0; it < config.ransac_iterations; ++it) {
      const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
      if (a == b || b == c || a == c) continue;
      const Eigen::Vector3d n = (points[b] - points[a]).cross(points[c] - points[a]);
      const double len = n.norm();
      if (!(len > 1e-12)) continue;
      const Eigen::Vector3d unit = n / len;
      current.clear();
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (std::abs(unit.dot(points[i] - points[a])) < config.inlier_threshold_m) current.push_back(i);
      }
      if (current.size() > best) {
        best = current.size();
        inliers = current;
      }
    }
  }

  PrincipalAxes axes = principal_axes(points, inliers);
  if (inliers.size() < 3 || collinear(axes)) {
    inliers = all;
    axes = principal_axes(points, all);
  }

  GroundPlane plane;
  plane.origin = axes.centroid;
  plane.normal = axes.eigenvectors.col(0).normalized();
  if (up_hint) {
    if (plane.normal.dot(*up_hint - plane.origin) < 0.0) plane.normal = -plane.normal;
  } else {
    plane.normal = positive_dominant(plane.normal);
  }
  plane.axis_x = positive_dominant(axes.eigenvectors.col(2).normalized());
  plane.axis_x = (plane.axis_x - plane.normal.dot(plane.axis_x) * plane.normal).normalized();
  plane.axis_y = plane.normal.cross(plane.axis_x);
  plane.n_inliers = inliers.size();
  return plane;
}

}  // namespace pedeval::geometry
