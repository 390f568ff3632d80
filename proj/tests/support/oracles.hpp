#pragma once

// Independent reference implementations used to cross-check the library.
// They favour obviousness over speed.

#include <optional>
#include <span>
#include <vector>

#include "pedeval/metrics/analysis.hpp"
#include "pedeval/metrics/config.hpp"
#include "pedeval/trajdata/types.hpp"

namespace pedeval::testkit {

/// Wasserstein-1 between two uniform empirical distributions, solved as a
/// transportation problem: side a carries |b| units per point, side b
/// carries |a| units per point, and successive shortest augmenting paths
/// (Bellman-Ford on the residual graph) move all |a||b| units.
double transport_emd(std::span<const double> a, std::span<const double> b);

/// Wasserstein-1 as the integral of |Qa(u) - Qb(u)| over u in [0, 1], with
/// Q the empirical quantile functions, summed piecewise between the merged
/// breakpoints i/|a| and j/|b|. Fast enough for large samples.
double quantile_emd(std::vector<double> a, std::vector<double> b);

/// Minimum over every monotone warping path, by explicit enumeration.
double dtw_enumerate(std::span<const Point2> a, std::span<const Point2> b);

/// One agent at one frame, found by scanning every trajectory.
struct BruteState {
  Point2 position;
  Point2 velocity;
};

/// All frames of all scenes, agents gathered with active_at() scans.
std::vector<std::vector<BruteState>> brute_frames(const metrics::Corpus& corpus);

std::vector<double> brute_collision_counts(const metrics::Corpus& corpus, double threshold);
double brute_collision_percent(const metrics::Corpus& corpus, double threshold);

struct BruteFlows {
  std::vector<double> x;
  std::vector<double> y;
};
BruteFlows brute_flows(const metrics::Corpus& corpus, std::size_t k);
std::optional<double> brute_flow_t2v(const metrics::Corpus& corpus, std::size_t k);
std::optional<double> brute_flow_i2v(const metrics::Corpus& gen, const metrics::Corpus& gt, std::size_t k);

std::vector<double> brute_nn_distances(const metrics::Corpus& corpus, double eps, double radius);

}  // namespace pedeval::testkit
