#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "pedeval/trajdata/types.hpp"

namespace pedeval::metricspace {

/// Exact Wasserstein-1 distance between two empirical distributions with
/// uniform weights (sizes may differ), by integrating |F_a - F_b| over the
/// merged support. Throws Error(kValidation) if either side is empty.
double emd_1d(std::span<const double> a, std::span<const double> b);

struct DtwOptions {
  /// Sakoe-Chiba half-width around the (length-scaled) diagonal; unset means
  /// unconstrained.
  std::optional<std::size_t> band;
};

/// Sum-cost dynamic time warping with Euclidean ground cost.
double dtw(std::span<const Point2> a, std::span<const Point2> b, const DtwOptions& options = {});

/// Distance to the k-th nearest of `others` (the query itself must not be in
/// `others`). nullopt when fewer than k candidates exist.
std::optional<double> knn_radius(Point2 query, std::span<const Point2> others, std::size_t k);

/// k / (pi r^2); nullopt for r <= 0.
std::optional<double> local_density(double radius, std::size_t k);

/// 0.9 * min(sd, IQR/1.34) * n^(-1/5), falling back to the non-zero term.
double silverman_bandwidth(std::span<const double> samples);

struct KdeOptions {
  std::optional<double> bandwidth;  // Silverman when unset
  std::size_t grid_points = 512;
};

/// Argmax of a Gaussian KDE on an even grid over [min, max]; ties resolve to
/// the smaller value. Identical samples return that value.
double kde_mode(std::span<const double> samples, const KdeOptions& options = {});

}  // namespace pedeval::metricspace
