#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pedeval/kinematics/smoother.hpp"

namespace pedeval::metrics {

/// Every threshold used by the metric suite. Defaults are the reference
/// protocol values; all of them are echoed into reports.
struct MetricConfig {
  double collision_threshold_m = 0.1;        // delta
  double stationary_threshold_m = 0.2;       // delta_stat
  double moving_speed_threshold = 0.1;       // epsilon, m/s
  std::size_t density_neighbors = 4;         // K
  double nn_radius_m = 10.0;
  std::size_t internal_diversity_subsample = 200;
  std::optional<std::size_t> internal_diversity_band;  // DTW band for int-div only
  std::optional<double> kde_bandwidth;                 // Silverman when unset
  std::size_t kde_grid_points = 512;
  double geo_conf_low_threshold = 1.1;
  kinematics::SmootherConfig smoother;

  double fd_max_density = 5.0;  // ped/m^2
  std::size_t fd_bins = 10;
  std::size_t polar_angle_bins = 36;
  std::size_t polar_radius_bins = 20;
};

/// Counters and notes accumulated while evaluating; keys are stable
/// snake_case identifiers.
class Diagnostics {
 public:
  void add(const std::string& key, std::int64_t n = 1) { counters_[key] += n; }
  void note(std::string text) { notes_.push_back(std::move(text)); }
  std::int64_t count(const std::string& key) const {
    auto it = counters_.find(key);
    return it == counters_.end() ? 0 : it->second;
  }
  const std::map<std::string, std::int64_t>& counters() const noexcept { return counters_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }

 private:
  std::map<std::string, std::int64_t> counters_;
  std::vector<std::string> notes_;
};

}  // namespace pedeval::metrics
