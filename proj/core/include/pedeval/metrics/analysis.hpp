#pragma once

#include <span>
#include <vector>

#include "pedeval/kinematics/smoother.hpp"
#include "pedeval/kinematics/summary.hpp"
#include "pedeval/metrics/config.hpp"
#include "pedeval/trajdata/types.hpp"

namespace pedeval::metrics {

/// A scene with its smoothed states and per-agent summaries, aligned with
/// scene.trajectories().
struct AnalyzedScene {
  Scene scene;
  std::vector<kinematics::SmoothedTrajectory> smoothed;
  std::vector<kinematics::KinematicSummary> summaries;
};

/// Pooled clips evaluated together (accumulated repetitions of one prompt
/// or start frame).
using Corpus = std::vector<AnalyzedScene>;

AnalyzedScene analyze(Scene scene, const MetricConfig& config = {});

/// Analyzes scenes on a bounded worker pool; output order matches input.
Corpus analyze(std::span<const Scene> scenes, const MetricConfig& config = {});

/// One agent at one frame: raw position and smoothed velocity.
struct AgentState {
  std::size_t trajectory;
  Point2 position;
  Point2 velocity;
};

/// Active agents of every frame of one analyzed scene.
std::vector<std::vector<AgentState>> frame_states(const AnalyzedScene& scene);

}  // namespace pedeval::metrics
