#include "pedeval/synthgen/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>

#include "pedeval/error.hpp"
#include "pedeval/keyvalue.hpp"

namespace pedeval::synthgen {
namespace {

// Called when agent i arrives; may assign a new goal.
using Retarget = std::function<void(std::size_t, std::optional<Point2>&)>;

Scene integrate(std::vector<Point2> pos, std::vector<Point2> vel, std::vector<std::optional<Point2>> goals,
                const SocialForceParams& p, double fps, std::int64_t frames, const Retarget& retarget) {
  if (!(fps > 0.0)) throw Error(ErrorCode::kValidation, "fps must be positive");
  if (frames < 1) throw Error(ErrorCode::kValidation, "need at least one frame");
  const std::size_t n = pos.size();
  const double dt = 1.0 / fps;
  std::vector<std::vector<Point2>> tracks(n);
  for (auto& t : tracks) t.reserve(static_cast<std::size_t>(frames));
  std::vector<Point2> force(n);

  for (std::int64_t k = 0; k < frames; ++k) {
    for (std::size_t i = 0; i < n; ++i) tracks[i].push_back(pos[i]);
    if (k + 1 == frames) break;

    for (std::size_t i = 0; i < n; ++i) {
      if (goals[i] && distance(*goals[i], pos[i]) <= p.goal_tolerance && retarget) retarget(i, goals[i]);
      Point2 desired{};
      if (goals[i]) {
        const Point2 to_goal = *goals[i] - pos[i];
        const double d = norm(to_goal);
        if (d > p.goal_tolerance) desired = (p.desired_speed / d) * to_goal;
      }
      Point2 f = (1.0 / p.relaxation_time) * (desired - vel[i]);
      if (p.repulsion) {
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          const Point2 away = pos[i] - pos[j];
          const double d = norm(away);
          if (d <= 0.0) continue;
          // Semi-minor axis of the ellipse through pos_j and pos_j moved by
          // the relative step: shrinks while closing in, equals d otherwise.
          const Point2 step = p.anticipation_s * (vel[j] - vel[i]);
          const double s = norm(step);
          const double sum = d + norm(away - step);
          const double b = 0.5 * std::sqrt(std::max(0.0, sum * sum - s * s));
          const double mag = p.repulsion_strength * std::exp((p.interaction_radius - b) / p.repulsion_range);
          f = f + (mag / d) * away;
        }
      }
      force[i] = f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      pos[i] = pos[i] + dt * vel[i];
      vel[i] = vel[i] + dt * force[i];
      const double s = norm(vel[i]);
      if (s > p.max_speed) vel[i] = (p.max_speed / s) * vel[i];
    }
  }

  std::vector<Trajectory> trajs;
  trajs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) trajs.emplace_back(static_cast<AgentId>(i), 0, std::move(tracks[i]));
  return Scene(std::move(trajs), fps, frames);
}

Trajectory straight(AgentId id, Point2 start, Point2 velocity, double fps, std::int64_t frames) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(frames));
  for (std::int64_t k = 0; k < frames; ++k) pts.push_back(start + (static_cast<double>(k) / fps) * velocity);
  return {id, 0, std::move(pts)};
}

}  // namespace

const char* to_string(DensityClass d) {
  switch (d) {
    case DensityClass::kSparse: return "sparse";
    case DensityClass::kModerate: return "moderate";
    case DensityClass::kCrowded: return "crowded";
  }
  return "?";
}

const char* to_string(InteractionClass i) {
  switch (i) {
    case InteractionClass::kDirectional: return "directional";
    case InteractionClass::kMultidirectional: return "multidirectional";
    case InteractionClass::kConverging: return "converging";
  }
  return "?";
}

DensityClass parse_density_class(const std::string& s) {
  if (s == "sparse") return DensityClass::kSparse;
  if (s == "moderate") return DensityClass::kModerate;
  if (s == "crowded") return DensityClass::kCrowded;
  throw Error(ErrorCode::kValidation, "unknown density class '" + s + "'", "density");
}

InteractionClass parse_interaction_class(const std::string& s) {
  if (s == "directional") return InteractionClass::kDirectional;
  if (s == "multidirectional") return InteractionClass::kMultidirectional;
  if (s == "converging") return InteractionClass::kConverging;
  throw Error(ErrorCode::kValidation, "unknown interaction class '" + s + "'", "interaction");
}

double target_density(DensityClass d) {
  switch (d) {
    case DensityClass::kSparse: return 0.2;
    case DensityClass::kModerate: return 1.2;
    case DensityClass::kCrowded: return 3.6;
  }
  return 0.0;
}

std::size_t ScenarioSpec::resolved_agent_count() const {
  if (agent_count) return *agent_count;
  const double n = std::round(target_density(density) * arena_size_m * arena_size_m);
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

void ScenarioSpec::validate() const {
  if (agent_count && *agent_count == 0) throw Error(ErrorCode::kValidation, "agent count must be positive", "agents");
  if (!(fps > 0.0) || !std::isfinite(fps)) throw Error(ErrorCode::kValidation, "fps must be positive", "fps");
  if (!(arena_size_m > 0.0) || !std::isfinite(arena_size_m))
    throw Error(ErrorCode::kValidation, "arena size must be positive", "arena_size_m");
  if (!(duration_s > 0.0) || !std::isfinite(duration_s))
    throw Error(ErrorCode::kValidation, "duration must be positive", "duration_s");
  if (!(forces.relaxation_time > 0.0) || !(forces.repulsion_range > 0.0) || !(forces.max_speed > 0.0) ||
      !(forces.anticipation_s >= 0.0))
    throw Error(ErrorCode::kValidation, "force parameters must be positive", "forces");
}

Scene simulate_agents(std::span<const AgentInit> agents, const SocialForceParams& params, double fps,
                      std::int64_t frames) {
  std::vector<Point2> pos, vel;
  std::vector<std::optional<Point2>> goals;
  for (const auto& a : agents) {
    pos.push_back(a.position);
    vel.push_back(a.velocity);
    goals.emplace_back(a.goal);
  }
  return integrate(std::move(pos), std::move(vel), std::move(goals), params, fps, frames, {});
}

Scene simulate(const ScenarioSpec& spec) {
  spec.validate();
  const std::size_t n = spec.resolved_agent_count();
  const double side = spec.arena_size_m;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const double cell = side / static_cast<double>(cols);
  std::vector<std::size_t> cells(cols * cols);
  std::iota(cells.begin(), cells.end(), std::size_t{0});
  std::shuffle(cells.begin(), cells.end(), rng);

  std::vector<Point2> pos(n), vel(n);
  std::vector<std::optional<Point2>> goals(n);
  const Point2 centre{side / 2.0, side / 2.0};
  auto random_goal = [&] { return Point2{unit(rng) * side, unit(rng) * side}; };

  for (std::size_t i = 0; i < n; ++i) {
    const double cx = (static_cast<double>(cells[i] % cols) + 0.5) * cell;
    const double cy = (static_cast<double>(cells[i] / cols) + 0.5) * cell;
    pos[i] = {cx + (unit(rng) - 0.5) * 0.2 * cell, cy + (unit(rng) - 0.5) * 0.2 * cell};
    switch (spec.interaction) {
      case InteractionClass::kDirectional: goals[i] = Point2{i % 2 == 0 ? side : 0.0, pos[i].y}; break;
      case InteractionClass::kMultidirectional: goals[i] = random_goal(); break;
      case InteractionClass::kConverging: goals[i] = centre; break;
    }
    const Point2 to_goal = *goals[i] - pos[i];
    const double d = norm(to_goal);
    if (d > spec.forces.goal_tolerance) vel[i] = (spec.forces.desired_speed / d) * to_goal;
  }

  Retarget retarget = [&](std::size_t, std::optional<Point2>& goal) {
    switch (spec.interaction) {
      case InteractionClass::kDirectional: goal->x = goal->x > 0.0 ? 0.0 : side; break;
      case InteractionClass::kMultidirectional: goal = random_goal(); break;
      case InteractionClass::kConverging: break;
    }
  };
  const auto frames = std::max<std::int64_t>(1, std::llround(spec.duration_s * spec.fps));
  return integrate(std::move(pos), std::move(vel), std::move(goals), spec.forces, spec.fps, frames, retarget);
}

ScenarioSpec parse_scenario(const std::string& text) {
  auto kv = KeyValues::parse(text);
  ScenarioSpec s;
  if (auto v = kv.take_string("density")) s.density = parse_density_class(*v);
  if (auto v = kv.take_string("interaction")) s.interaction = parse_interaction_class(*v);
  if (auto v = kv.take_uint("agents")) s.agent_count = static_cast<std::size_t>(*v);
  kv.take_into("arena_size_m", s.arena_size_m);
  kv.take_into("duration_s", s.duration_s);
  kv.take_into("fps", s.fps);
  kv.take_into("seed", s.seed);
  kv.take_into("forces.desired_speed", s.forces.desired_speed);
  kv.take_into("forces.relaxation_time", s.forces.relaxation_time);
  kv.take_into("forces.repulsion_strength", s.forces.repulsion_strength);
  kv.take_into("forces.repulsion_range", s.forces.repulsion_range);
  kv.take_into("forces.interaction_radius", s.forces.interaction_radius);
  kv.take_into("forces.max_speed", s.forces.max_speed);
  kv.take_into("forces.goal_tolerance", s.forces.goal_tolerance);
  kv.take_into("forces.anticipation_s", s.forces.anticipation_s);
  kv.take_into("forces.repulsion", s.forces.repulsion);
  kv.require_consumed();
  s.validate();
  return s;
}

double planted_speed(double density) { return std::max(0.0, 1.4 * (1.0 - density / 5.4)); }

std::map<std::string, Scene> degenerate_fixtures() {
  constexpr double fps = 10.0;
  constexpr std::int64_t frames = 50;
  constexpr double walk = 1.3;
  std::map<std::string, Scene> out;
  auto scene = [&](std::vector<Trajectory> t) { return Scene(std::move(t), fps, frames); };

  out.emplace("single_line", scene({straight(0, {0, 0}, {walk, 0}, fps, frames)}));
  out.emplace("colocated_pair",
              scene({straight(0, {0, 0}, {walk, 0}, fps, frames), straight(1, {0, 0}, {walk, 0}, fps, frames)}));
  out.emplace("parallel_walkers",
              scene({straight(0, {0, 0}, {walk, 0}, fps, frames), straight(1, {0, 1}, {walk, 0}, fps, frames)}));
  out.emplace("side_by_side_0p6",
              scene({straight(0, {0, 0}, {walk, 0}, fps, frames), straight(1, {0, 0.6}, {walk, 0}, fps, frames)}));
  // Both reach the origin at frame 25.
  const double lead = walk * 25.0 / fps;
  out.emplace("crossing_paths", scene({straight(0, {-lead, 0}, {walk, 0}, fps, frames),
                                       straight(1, {0, -lead}, {0, walk}, fps, frames)}));

  {
    constexpr double radius = 3.0;
    std::vector<Point2> pts;
    for (std::int64_t k = 0; k < frames; ++k) {
      const double a = walk / radius * static_cast<double>(k) / fps;
      pts.push_back({radius * std::cos(a), radius * std::sin(a)});
    }
    std::vector<Trajectory> t;
    t.emplace_back(0, 0, std::move(pts));
    out.emplace("circle", scene(std::move(t)));
  }
  {
    std::vector<Trajectory> t;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t.push_back(straight(r * 4 + c, {0.75 * c, 0.75 * r}, {walk, 0}, fps, frames));
    out.emplace("lattice_0p75", scene(std::move(t)));
  }
  out.emplace("all_stationary", scene({straight(0, {0, 0}, {0, 0}, fps, frames),
                                       straight(1, {2, 0}, {0, 0}, fps, frames),
                                       straight(2, {0, 2}, {0, 0}, fps, frames)}));
  {
    // Rings of 12: each member's 4th-nearest neighbour sits at exactly the
    // ring radius R, so K=4 density is 4 / (pi R^2) for every member.
    constexpr int members = 12;
    constexpr int rings = 10;
    constexpr std::int64_t fd_frames = 20;
    std::vector<Trajectory> t;
    for (int g = 0; g < rings; ++g) {
      const double rho = (g + 0.5) * 0.5;
      const double radius = std::sqrt(4.0 / (std::numbers::pi * rho));
      const Point2 v{planted_speed(rho), 0.0};
      const Point2 centre{0.0, 50.0 * g};
      for (int m = 0; m < members; ++m) {
        const double a = 2.0 * std::numbers::pi * m / members;
        t.push_back(straight(g * members + m, centre + radius * Point2{std::cos(a), std::sin(a)}, v, fps, fd_frames));
      }
    }
    out.emplace("planted_fd", Scene(std::move(t), fps, fd_frames));
  }
  return out;
}

}  // namespace pedeval::synthgen
