#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pedeval/metrics/analysis.hpp"
#include "pedeval/metrics/config.hpp"
#include "pedeval/metrics/metrics.hpp"

namespace pedeval::metrics {

enum class Mode { kI2V, kT2V };

const char* to_string(Mode mode);

struct MetricReport {
  Mode mode = Mode::kT2V;
  /// Metric name -> value in a fixed order. Metrics without a defined value
  /// for this input are left out of `values` and named in `absent`.
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> absent;
  WalkingSpeedSummary walking_speed;
  Diagnostics diagnostics;
  MetricConfig config;
  std::uint64_t seed = 0;

  std::optional<double> value(const std::string& name) const;
  bool has(const std::string& name) const { return value(name).has_value(); }
  /// True when geo_conf is present and below config.geo_conf_low_threshold.
  bool geo_confidence_low() const;
};

MetricReport evaluate_i2v(const Corpus& gen, const Corpus& gt, const MetricConfig& config = {}, std::uint64_t seed = 0);
MetricReport evaluate_t2v(const Corpus& gen, const MetricConfig& config = {}, std::uint64_t seed = 0);

/// Deterministic JSON: fixed key order, shortest round-trip doubles.
std::string to_json(const MetricReport& report);

}  // namespace pedeval::metrics
