#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "pedeval/trajdata/types.hpp"

namespace pedeval::synthgen {

enum class DensityClass { kSparse, kModerate, kCrowded };
enum class InteractionClass { kDirectional, kMultidirectional, kConverging };

const char* to_string(DensityClass d);
const char* to_string(InteractionClass i);
DensityClass parse_density_class(const std::string& s);
InteractionClass parse_interaction_class(const std::string& s);

/// Target crowd density for a class, ped/m^2.
double target_density(DensityClass d);

struct SocialForceParams {
  double desired_speed = 1.3;   // m/s
  double relaxation_time = 0.5; // s
  double repulsion_strength = 2.0;  // A, m/s^2
  double repulsion_range = 0.3;     // B, m
  double interaction_radius = 0.5;  // r, m
  double max_speed = 2.0;           // m/s
  double goal_tolerance = 0.3;      // m
  /// Horizon of the relative step used in the elliptical distance; 0 gives
  /// plain centre distance.
  double anticipation_s = 0.5;
  bool repulsion = true;
};

struct ScenarioSpec {
  DensityClass density = DensityClass::kSparse;
  InteractionClass interaction = InteractionClass::kDirectional;
  std::optional<std::size_t> agent_count;  // derived from density x area when unset
  double arena_size_m = 10.0;              // square side
  double duration_s = 10.0;
  double fps = 25.0;
  std::uint64_t seed = 0;
  SocialForceParams forces;

  std::size_t resolved_agent_count() const;
  void validate() const;
};

struct AgentInit {
  Point2 position;
  Point2 goal;
  Point2 velocity;
};

/// Explicit-Euler social-force integration at dt = 1/fps. Agents stop once
/// within the goal tolerance. Every agent is active for all `frames` frames.
Scene simulate_agents(std::span<const AgentInit> agents, const SocialForceParams& params, double fps,
                      std::int64_t frames);

/// Seeded scenario run: agents start on a jittered grid and re-target on
/// arrival (directional: shuttle between the x-ends on their own row,
/// alternating sense; multidirectional: fresh random goal; converging:
/// arena centre).
Scene simulate(const ScenarioSpec& spec);

/// Parses `key = value` lines (see README) into a spec, starting from
/// defaults. Throws Error(kValidation) on unknown keys or bad values.
ScenarioSpec parse_scenario(const std::string& text);

/// Analytic fixtures: single_line, colocated_pair, parallel_walkers,
/// side_by_side_0p6, crossing_paths, circle, lattice_0p75, all_stationary,
/// planted_fd.
std::map<std::string, Scene> degenerate_fixtures();

/// Speed law planted in the planted_fd fixture.
double planted_speed(double density);

}  // namespace pedeval::synthgen
