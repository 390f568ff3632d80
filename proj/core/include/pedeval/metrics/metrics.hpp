#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pedeval/metrics/analysis.hpp"
#include "pedeval/metrics/config.hpp"

namespace pedeval::metrics {

// Single-corpus overloads are the absolute (T2V) variants; two-corpus
// overloads compare generated against ground truth (I2V).

double velocity(const Corpus& gen);
double velocity(const Corpus& gen, const Corpus& gt);
double acceleration(const Corpus& gen);
double acceleration(const Corpus& gen, const Corpus& gt);
double distance_traveled(const Corpus& gen);
double distance_traveled(const Corpus& gen, const Corpus& gt);

/// Minimum-pairwise DTW averaged over both directions and divided by the
/// common fps. Generated trajectories are resampled to the ground-truth fps
/// when they differ.
double path_error(const Corpus& gen, const Corpus& gt, Diagnostics* diag = nullptr);

/// Mean of the two one-way coverage fractions of best-DTW matches.
double path_diversity(const Corpus& gen, const Corpus& gt, Diagnostics* diag = nullptr);

struct PathScores {
  double error = 0.0;
  double diversity = 0.0;
};

/// Both path metrics from one shared DTW matrix.
PathScores path_scores(const Corpus& gen, const Corpus& gt, Diagnostics* diag = nullptr);

/// Mean pairwise DTW / fps over a seeded subsample of at most
/// config.internal_diversity_subsample trajectories. nullopt for N < 2.
std::optional<double> internal_diversity(const Corpus& gen, const MetricConfig& config = {},
                                         std::uint64_t seed = 0, Diagnostics* diag = nullptr);

/// Per-frame counts of agents with another agent closer than the threshold.
std::vector<double> collision_counts(const Corpus& corpus, const MetricConfig& config = {});
/// Percentage of agent-frames in collision.
double collision(const Corpus& gen, const MetricConfig& config = {});
double collision(const Corpus& gen, const Corpus& gt, const MetricConfig& config = {});

/// Fraction of stationary agents.
double stationary(const Corpus& gen);
double stationary(const Corpus& gen, const Corpus& gt);

/// Per-frame active-agent counts over every frame of every clip.
std::vector<double> population_counts(const Corpus& corpus);
std::optional<double> population(const Corpus& gen);
std::optional<double> population(const Corpus& gen, const Corpus& gt);

struct DensitySample {
  double density;  // ped/m^2
  double speed;    // m/s
  double flow;     // density * speed
  Point2 velocity;
};

/// Every agent-frame with a defined K-nearest-neighbour density.
std::vector<DensitySample> density_samples(const Corpus& corpus, const MetricConfig& config = {},
                                           Diagnostics* diag = nullptr);

struct DirectionalFlows {
  std::vector<double> x;  // |vx| > |vy|
  std::vector<double> y;  // |vy| > |vx|
};
DirectionalFlows directional_flows(const Corpus& corpus, const MetricConfig& config = {},
                                   Diagnostics* diag = nullptr);

std::optional<double> flow(const Corpus& gen, const MetricConfig& config = {}, Diagnostics* diag = nullptr);
std::optional<double> flow(const Corpus& gen, const Corpus& gt, const MetricConfig& config = {},
                           Diagnostics* diag = nullptr);

struct NeighborOffset {
  Point2 offset;    // neighbour position minus agent position
  Point2 velocity;  // agent velocity
};

/// Nearest moving neighbour within the radius for every moving agent-frame.
std::vector<NeighborOffset> nearest_moving_neighbors(const Corpus& corpus, const MetricConfig& config = {});
std::vector<double> nn_distances(const Corpus& corpus, const MetricConfig& config = {});

/// KDE mode of nearest-neighbour distances.
std::optional<double> nn_distance(const Corpus& gen, const MetricConfig& config = {}, Diagnostics* diag = nullptr);
std::optional<double> nn_distance(const Corpus& gen, const Corpus& gt, const MetricConfig& config = {},
                                  Diagnostics* diag = nullptr);

/// Mean over agents of per-agent mean tracker confidence; nullopt when no
/// trajectory carries confidences.
std::optional<double> mot_confidence(const Corpus& gen);
/// Same aggregation over reconstruction-confidence values.
std::optional<double> geo_confidence(const Corpus& gen);

struct WalkingSpeedSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

/// Per-agent mean speeds of agents whose raw displacement exceeds the
/// stationary threshold.
WalkingSpeedSummary walking_speed_summary(const Corpus& corpus, const MetricConfig& config = {});

}  // namespace pedeval::metrics
