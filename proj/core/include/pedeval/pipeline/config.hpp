#pragma once

#include <filesystem>
#include <string>

#include "pedeval/keyvalue.hpp"
#include "pedeval/metrics/config.hpp"
#include "pedeval/pipeline/t2v.hpp"
#include "pedeval/trajdata/statistics.hpp"

namespace pedeval::pipeline {

/// Everything a run can be configured with; defaults reproduce the
/// reference protocol.
struct PipelineConfig {
  metrics::MetricConfig metrics;
  ReconstructionConfig reconstruction;
  AccumulationThresholds accumulation;
};

/// Applies recognised keys from `kv` (consuming them) onto `base`.
/// Sections: metrics, smoother, scale, height, plane, staticity, depth,
/// accumulation.
PipelineConfig apply_config(KeyValues& kv, PipelineConfig base = {});

/// Parses a settings file; unknown keys are an error.
PipelineConfig parse_config(const std::string& text);
PipelineConfig load_config(const std::filesystem::path& path);

/// The full configuration in the same settings syntax.
std::string to_text(const PipelineConfig& config);

}  // namespace pedeval::pipeline
