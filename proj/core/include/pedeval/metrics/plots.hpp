#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pedeval/metrics/analysis.hpp"
#include "pedeval/metrics/config.hpp"

namespace pedeval::metrics {

/// Nearest-neighbour offsets in each agent's heading frame (x forward, y to
/// the left), binned by angle over [-180, 180) degrees and by radius over
/// [0, nn_radius]. Mass sums to 1 unless there are no samples.
struct PolarHistogram {
  std::size_t angle_bins = 0;
  std::size_t radius_bins = 0;
  double max_radius = 0.0;
  std::size_t samples = 0;
  std::vector<double> mass;  // angle-major: mass[a * radius_bins + r]

  double at(std::size_t angle_bin, std::size_t radius_bin) const { return mass[angle_bin * radius_bins + radius_bin]; }
  std::vector<double> angle_marginal() const;
};

PolarHistogram nn_polar_histogram(const Corpus& corpus, const MetricConfig& config = {});

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

/// Linear-interpolation quantiles (numpy default).
Quartiles quartiles(std::vector<double> values);

struct FundamentalBin {
  double density_lo = 0.0;
  double density_hi = 0.0;
  std::size_t count = 0;
  Quartiles speed;
  Quartiles flow;
};

/// Speed and flow quartiles per density bin over [0, fd_max_density]; bins
/// without samples are nullopt.
std::vector<std::optional<FundamentalBin>> fundamental_diagram(const Corpus& corpus, const MetricConfig& config = {},
                                                               Diagnostics* diag = nullptr);

std::string fundamental_diagram_csv(const std::vector<std::optional<FundamentalBin>>& bins);
std::string polar_histogram_csv(const PolarHistogram& histogram);

enum class LevelOfService { kA, kB, kC, kD, kE, kF };

/// Fruin grades; each boundary density belongs to the denser grade.
LevelOfService classify_los(double density);
char to_char(LevelOfService los);

}  // namespace pedeval::metrics
