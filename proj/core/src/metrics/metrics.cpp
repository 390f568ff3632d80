#include "pedeval/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "pedeval/error.hpp"
#include "pedeval/metricspace/metricspace.hpp"

namespace pedeval::metrics {
namespace {

using metricspace::emd_1d;

template <typename F>
std::vector<double> per_agent(const Corpus& corpus, F field) {
  std::vector<double> out;
  for (const auto& s : corpus)
    for (const auto& summary : s.summaries) out.push_back(field(summary));
  return out;
}

void require_agents(const std::vector<double>& values, const char* which) {
  if (values.empty()) throw Error(ErrorCode::kValidation, "empty agent set", which);
}

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

template <typename F>
double absolute(const Corpus& gen, F field) {
  const auto v = per_agent(gen, field);
  require_agents(v, "gen");
  return mean(v);
}

template <typename F>
double relative(const Corpus& gen, const Corpus& gt, F field) {
  const auto a = per_agent(gen, field);
  const auto b = per_agent(gt, field);
  require_agents(a, "gen");
  require_agents(b, "gt");
  return emd_1d(a, b);
}

std::vector<Trajectory> pooled_trajectories(const Corpus& corpus, double fps, Diagnostics* diag) {
  std::vector<Trajectory> out;
  for (const auto& s : corpus) {
    const bool resample = s.scene.fps() != fps;
    if (resample && diag) diag->add("fps_resampled_scenes");
    for (const auto& t : s.scene.trajectories())
      out.push_back(resample ? kinematics::resample(t, s.scene.fps(), fps) : t);
  }
  return out;
}

double corpus_fps(const Corpus& corpus, const char* which) {
  if (corpus.empty()) throw Error(ErrorCode::kValidation, "no scenes", which);
  return corpus.front().scene.fps();
}

struct CrossDtw {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cost;
  double fps = 0.0;
  double at(std::size_t i, std::size_t j) const { return cost[i * cols + j]; }
};

CrossDtw cross_dtw(const Corpus& gen, const Corpus& gt, Diagnostics* diag) {
  CrossDtw m;
  m.fps = corpus_fps(gt, "gt");
  const auto a = pooled_trajectories(gen, m.fps, diag);
  const auto b = pooled_trajectories(gt, m.fps, diag);
  if (a.empty()) throw Error(ErrorCode::kValidation, "empty agent set", "gen");
  if (b.empty()) throw Error(ErrorCode::kValidation, "empty agent set", "gt");
  m.rows = a.size();
  m.cols = b.size();
  m.cost.resize(m.rows * m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) m.cost[i * m.cols + j] = metricspace::dtw(a[i].positions(), b[j].positions());
  return m;
}

// Row-wise argmin with ties to the lowest index, either over rows or columns.
std::vector<std::size_t> best_matches(const CrossDtw& m, bool by_row) {
  const std::size_t n = by_row ? m.rows : m.cols;
  const std::size_t other = by_row ? m.cols : m.rows;
  std::vector<std::size_t> best(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < other; ++j) {
      const double c = by_row ? m.at(i, j) : m.at(j, i);
      if (c < lo) {
        lo = c;
        best[i] = j;
      }
    }
  }
  return best;
}

double one_way_mean_min(const CrossDtw& m, bool by_row) {
  const auto best = best_matches(m, by_row);
  double sum = 0.0;
  for (std::size_t i = 0; i < best.size(); ++i) sum += by_row ? m.at(i, best[i]) : m.at(best[i], i);
  return sum / static_cast<double>(best.size());
}

double coverage(const CrossDtw& m, bool by_row) {
  auto best = best_matches(m, by_row);
  std::sort(best.begin(), best.end());
  const auto unique = static_cast<double>(std::unique(best.begin(), best.end()) - best.begin());
  return unique / static_cast<double>(by_row ? m.cols : m.rows);
}

std::optional<double> emd_or_absent(std::span<const double> a, std::span<const double> b, Diagnostics* diag,
                                    const char* key) {
  if (a.empty() || b.empty()) {
    if (diag) diag->add(key);
    return std::nullopt;
  }
  return emd_1d(a, b);
}

template <typename Field>
std::optional<double> agent_mean_confidence(const Corpus& gen, Field field) {
  std::vector<double> per_agent_mean;
  for (const auto& s : gen) {
    for (const auto& t : s.scene.trajectories()) {
      const auto c = field(t);
      if (c.empty()) continue;
      per_agent_mean.push_back(mean(c));
    }
  }
  if (per_agent_mean.empty()) return std::nullopt;
  return mean(per_agent_mean);
}

}  // namespace

double velocity(const Corpus& gen) { return absolute(gen, [](const auto& s) { return s.mean_speed; }); }
double velocity(const Corpus& gen, const Corpus& gt) {
  return relative(gen, gt, [](const auto& s) { return s.mean_speed; });
}
double acceleration(const Corpus& gen) { return absolute(gen, [](const auto& s) { return s.mean_accel; }); }
double acceleration(const Corpus& gen, const Corpus& gt) {
  return relative(gen, gt, [](const auto& s) { return s.mean_accel; });
}
double distance_traveled(const Corpus& gen) { return absolute(gen, [](const auto& s) { return s.path_length; }); }
double distance_traveled(const Corpus& gen, const Corpus& gt) {
  return relative(gen, gt, [](const auto& s) { return s.path_length; });
}

double path_error(const Corpus& gen, const Corpus& gt, Diagnostics* diag) {
  const auto m = cross_dtw(gen, gt, diag);
  return (one_way_mean_min(m, true) + one_way_mean_min(m, false)) / (2.0 * m.fps);
}

double path_diversity(const Corpus& gen, const Corpus& gt, Diagnostics* diag) {
  const auto m = cross_dtw(gen, gt, diag);
  return 0.5 * (coverage(m, true) + coverage(m, false));
}

PathScores path_scores(const Corpus& gen, const Corpus& gt, Diagnostics* diag) {
  const auto m = cross_dtw(gen, gt, diag);
  return {(one_way_mean_min(m, true) + one_way_mean_min(m, false)) / (2.0 * m.fps),
          0.5 * (coverage(m, true) + coverage(m, false))};
}

std::optional<double> internal_diversity(const Corpus& gen, const MetricConfig& config, std::uint64_t seed,
                                         Diagnostics* diag) {
  if (gen.empty()) {
    if (diag) diag->add("internal_diversity_too_few_agents");
    return std::nullopt;
  }
  const double fps = gen.front().scene.fps();
  auto trajs = pooled_trajectories(gen, fps, diag);
  if (trajs.size() < 2) {
    if (diag) diag->add("internal_diversity_too_few_agents");
    return std::nullopt;
  }

  std::vector<std::size_t> pick(trajs.size());
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  const std::size_t limit = std::max<std::size_t>(2, config.internal_diversity_subsample);
  if (pick.size() > limit) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < limit; ++i) {
      std::uniform_int_distribution<std::size_t> d(i, pick.size() - 1);
      std::swap(pick[i], pick[d(rng)]);
    }
    pick.resize(limit);
    std::sort(pick.begin(), pick.end());
    if (diag) diag->add("internal_diversity_subsampled_from", static_cast<std::int64_t>(trajs.size()));
  }

  const metricspace::DtwOptions opts{config.internal_diversity_band};
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < pick.size(); ++a) {
    for (std::size_t b = a + 1; b < pick.size(); ++b) {
      sum += metricspace::dtw(trajs[pick[a]].positions(), trajs[pick[b]].positions(), opts);
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs) / fps;
}

namespace {

// Collision flags per frame; calls visit(frame_count, flagged_count).
template <typename Visit>
void for_each_collision_frame(const Corpus& corpus, const MetricConfig& config, Visit visit) {
  for (const auto& s : corpus) {
    for (const auto& frame : frame_states(s)) {
      std::size_t flagged = 0;
      for (std::size_t i = 0; i < frame.size(); ++i) {
        for (std::size_t j = 0; j < frame.size(); ++j) {
          if (i != j && distance(frame[i].position, frame[j].position) < config.collision_threshold_m) {
            ++flagged;
            break;
          }
        }
      }
      visit(frame.size(), flagged);
    }
  }
}

}  // namespace

std::vector<double> collision_counts(const Corpus& corpus, const MetricConfig& config) {
  std::vector<double> out;
  for_each_collision_frame(corpus, config, [&](std::size_t, std::size_t flagged) {
    out.push_back(static_cast<double>(flagged));
  });
  return out;
}

double collision(const Corpus& gen, const MetricConfig& config) {
  std::size_t total = 0, flagged = 0;
  for_each_collision_frame(gen, config, [&](std::size_t n, std::size_t f) {
    total += n;
    flagged += f;
  });
  if (total == 0) return 0.0;
  return 100.0 * static_cast<double>(flagged) / static_cast<double>(total);
}

double collision(const Corpus& gen, const Corpus& gt, const MetricConfig& config) {
  return emd_1d(collision_counts(gen, config), collision_counts(gt, config));
}

double stationary(const Corpus& gen) {
  return absolute(gen, [](const auto& s) { return s.is_stationary ? 1.0 : 0.0; });
}
double stationary(const Corpus& gen, const Corpus& gt) {
  return relative(gen, gt, [](const auto& s) { return s.is_stationary ? 1.0 : 0.0; });
}

std::vector<double> population_counts(const Corpus& corpus) {
  std::vector<double> out;
  for (const auto& s : corpus)
    for (const auto& frame : active_sets(s.scene)) out.push_back(static_cast<double>(frame.size()));
  return out;
}

std::optional<double> population(const Corpus& gen) {
  const auto c = population_counts(gen);
  if (c.empty()) return std::nullopt;
  return mean(c);
}

std::optional<double> population(const Corpus& gen, const Corpus& gt) {
  return emd_or_absent(population_counts(gen), population_counts(gt), nullptr, "");
}

std::vector<DensitySample> density_samples(const Corpus& corpus, const MetricConfig& config, Diagnostics* diag) {
  std::vector<DensitySample> out;
  std::vector<Point2> others;
  const std::size_t k = config.density_neighbors;
  for (const auto& s : corpus) {
    for (const auto& frame : frame_states(s)) {
      if (frame.size() < k + 1) {
        if (diag) diag->add("density_sparse_samples", static_cast<std::int64_t>(frame.size()));
        continue;
      }
      for (std::size_t i = 0; i < frame.size(); ++i) {
        others.clear();
        for (std::size_t j = 0; j < frame.size(); ++j)
          if (j != i) others.push_back(frame[j].position);
        const auto r = metricspace::knn_radius(frame[i].position, others, k);
        const auto rho = r ? metricspace::local_density(*r, k) : std::nullopt;
        if (!rho) {
          if (diag) diag->add("density_zero_radius");
          continue;
        }
        const double speed = norm(frame[i].velocity);
        out.push_back({*rho, speed, *rho * speed, frame[i].velocity});
      }
    }
  }
  return out;
}

DirectionalFlows directional_flows(const Corpus& corpus, const MetricConfig& config, Diagnostics* diag) {
  DirectionalFlows f;
  for (const auto& d : density_samples(corpus, config, diag)) {
    const double ax = std::abs(d.velocity.x), ay = std::abs(d.velocity.y);
    if (ax > ay)
      f.x.push_back(d.flow);
    else if (ay > ax)
      f.y.push_back(d.flow);
    else if (diag)
      diag->add("flow_direction_ties");
  }
  return f;
}

std::optional<double> flow(const Corpus& gen, const MetricConfig& config, Diagnostics* diag) {
  const auto f = directional_flows(gen, config, diag);
  if (f.x.empty() && f.y.empty()) {
    if (diag) diag->add("flow_no_samples");
    return std::nullopt;
  }
  if (f.x.empty() || f.y.empty()) {
    if (diag) diag->add("flow_single_direction");
    return mean(f.x.empty() ? f.y : f.x);
  }
  return 0.5 * (mean(f.x) + mean(f.y));
}

std::optional<double> flow(const Corpus& gen, const Corpus& gt, const MetricConfig& config, Diagnostics* diag) {
  const auto a = directional_flows(gen, config, diag);
  const auto b = directional_flows(gt, config, diag);
  std::optional<double> ex, ey;
  if (!a.x.empty() && !b.x.empty()) ex = emd_1d(a.x, b.x);
  if (!a.y.empty() && !b.y.empty()) ey = emd_1d(a.y, b.y);
  if (ex && ey) return 0.5 * (*ex + *ey);
  if (!ex && !ey) {
    if (diag) diag->add("flow_no_samples");
    return std::nullopt;
  }
  if (diag) diag->add("flow_single_direction");
  return ex ? ex : ey;
}

std::vector<NeighborOffset> nearest_moving_neighbors(const Corpus& corpus, const MetricConfig& config) {
  std::vector<NeighborOffset> out;
  std::vector<std::size_t> movers;
  for (const auto& s : corpus) {
    for (const auto& frame : frame_states(s)) {
      movers.clear();
      for (std::size_t i = 0; i < frame.size(); ++i)
        if (norm(frame[i].velocity) > config.moving_speed_threshold) movers.push_back(i);
      for (const std::size_t i : movers) {
        std::optional<std::size_t> best;
        double best_d = std::numeric_limits<double>::infinity();
        for (const std::size_t j : movers) {
          if (j == i) continue;
          const double d = distance(frame[i].position, frame[j].position);
          if (d <= config.nn_radius_m && d < best_d) {
            best_d = d;
            best = j;
          }
        }
        if (best) out.push_back({frame[*best].position - frame[i].position, frame[i].velocity});
      }
    }
  }
  return out;
}

std::vector<double> nn_distances(const Corpus& corpus, const MetricConfig& config) {
  std::vector<double> out;
  for (const auto& n : nearest_moving_neighbors(corpus, config)) out.push_back(norm(n.offset));
  return out;
}

std::optional<double> nn_distance(const Corpus& gen, const MetricConfig& config, Diagnostics* diag) {
  const auto d = nn_distances(gen, config);
  if (d.empty()) {
    if (diag) diag->add("nn_no_samples");
    return std::nullopt;
  }
  return metricspace::kde_mode(d, {config.kde_bandwidth, config.kde_grid_points});
}

std::optional<double> nn_distance(const Corpus& gen, const Corpus& gt, const MetricConfig& config,
                                  Diagnostics* diag) {
  return emd_or_absent(nn_distances(gen, config), nn_distances(gt, config), diag, "nn_no_samples");
}

std::optional<double> mot_confidence(const Corpus& gen) {
  return agent_mean_confidence(gen, [](const Trajectory& t) { return t.confidences(); });
}

std::optional<double> geo_confidence(const Corpus& gen) {
  return agent_mean_confidence(gen, [](const Trajectory& t) { return t.geo_confidences(); });
}

WalkingSpeedSummary walking_speed_summary(const Corpus& corpus, const MetricConfig& config) {
  std::vector<double> speeds;
  for (const auto& s : corpus)
    for (const auto& summary : s.summaries)
      if (summary.raw_displacement > config.stationary_threshold_m) speeds.push_back(summary.mean_speed);
  WalkingSpeedSummary out;
  out.count = speeds.size();
  if (speeds.empty()) return out;
  out.mean = mean(speeds);
  double ss = 0.0;
  for (const double v : speeds) ss += (v - out.mean) * (v - out.mean);
  out.stddev = std::sqrt(ss / static_cast<double>(speeds.size()));
  return out;
}

}  // namespace pedeval::metrics
