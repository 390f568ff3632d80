#include "pedeval/metrics/report.hpp"

#include <cmath>
#include <json.hpp>

#include "pedeval/error.hpp"

namespace pedeval::metrics {
namespace {

class Builder {
 public:
  explicit Builder(MetricReport& r) : report_(r) {}

  void put(const std::string& name, std::optional<double> value) {
    if (value && !std::isfinite(*value))
      throw Error(ErrorCode::kInternal, "metric evaluated to a non-finite value", name);
    if (value)
      report_.values.emplace_back(name, *value);
    else
      report_.absent.push_back(name);
  }

 private:
  MetricReport& report_;
};

void count_inputs(const Corpus& corpus, const std::string& prefix, Diagnostics& diag) {
  std::int64_t agents = 0, frames = 0, short2 = 0, short3 = 0;
  for (const auto& s : corpus) {
    frames += s.scene.frame_count();
    for (const auto& t : s.scene.trajectories()) {
      ++agents;
      if (t.length() < 2) ++short2;
      if (t.length() < 3) ++short3;
    }
  }
  diag.add(prefix + "_scenes", static_cast<std::int64_t>(corpus.size()));
  diag.add(prefix + "_agents", agents);
  diag.add(prefix + "_frames", frames);
  if (short2) diag.add(prefix + "_agents_length_below_2", short2);
  if (short3) diag.add(prefix + "_agents_length_below_3", short3);
}

nlohmann::ordered_json config_json(const MetricConfig& c) {
  nlohmann::ordered_json j;
  j["collision_threshold_m"] = c.collision_threshold_m;
  j["stationary_threshold_m"] = c.stationary_threshold_m;
  j["moving_speed_threshold"] = c.moving_speed_threshold;
  j["density_neighbors"] = c.density_neighbors;
  j["nn_radius_m"] = c.nn_radius_m;
  j["internal_diversity_subsample"] = c.internal_diversity_subsample;
  j["internal_diversity_band"] = c.internal_diversity_band ? nlohmann::ordered_json(*c.internal_diversity_band)
                                                           : nlohmann::ordered_json(nullptr);
  j["kde_bandwidth"] = c.kde_bandwidth ? nlohmann::ordered_json(*c.kde_bandwidth) : nlohmann::ordered_json(nullptr);
  j["kde_grid_points"] = c.kde_grid_points;
  j["geo_conf_low_threshold"] = c.geo_conf_low_threshold;
  j["smoother_accel_sigma"] = c.smoother.accel_sigma;
  j["smoother_measurement_sigma"] = c.smoother.measurement_sigma;
  j["smoother_initial_velocity_var"] = c.smoother.initial_velocity_var;
  j["fd_max_density"] = c.fd_max_density;
  j["fd_bins"] = c.fd_bins;
  j["polar_angle_bins"] = c.polar_angle_bins;
  j["polar_radius_bins"] = c.polar_radius_bins;
  return j;
}

}  // namespace

const char* to_string(Mode mode) { return mode == Mode::kI2V ? "I2V" : "T2V"; }

std::optional<double> MetricReport::value(const std::string& name) const {
  for (const auto& [k, v] : values)
    if (k == name) return v;
  return std::nullopt;
}

bool MetricReport::geo_confidence_low() const {
  const auto g = value("geo_conf");
  return g && *g < config.geo_conf_low_threshold;
}

MetricReport evaluate_i2v(const Corpus& gen, const Corpus& gt, const MetricConfig& config, std::uint64_t seed) {
  MetricReport r;
  r.mode = Mode::kI2V;
  r.config = config;
  r.seed = seed;
  auto& diag = r.diagnostics;
  count_inputs(gen, "gen", diag);
  count_inputs(gt, "gt", diag);

  Builder b(r);
  b.put("velocity", velocity(gen, gt));
  b.put("acceleration", acceleration(gen, gt));
  b.put("distance", distance_traveled(gen, gt));
  const auto path = path_scores(gen, gt, &diag);
  b.put("path_error", path.error);
  b.put("path_diversity", path.diversity);
  b.put("collision", collision(gen, gt, config));
  b.put("stationary", stationary(gen, gt));
  b.put("population", population(gen, gt));
  b.put("flow", flow(gen, gt, config, &diag));
  b.put("nn_dist", nn_distance(gen, gt, config, &diag));
  b.put("mot_conf", mot_confidence(gen));
  r.walking_speed = walking_speed_summary(gen, config);
  return r;
}

MetricReport evaluate_t2v(const Corpus& gen, const MetricConfig& config, std::uint64_t seed) {
  MetricReport r;
  r.mode = Mode::kT2V;
  r.config = config;
  r.seed = seed;
  auto& diag = r.diagnostics;
  count_inputs(gen, "gen", diag);

  Builder b(r);
  b.put("velocity", velocity(gen));
  b.put("acceleration", acceleration(gen));
  b.put("distance", distance_traveled(gen));
  b.put("internal_diversity", internal_diversity(gen, config, seed, &diag));
  b.put("collision", collision(gen, config));
  b.put("stationary", stationary(gen));
  b.put("population", population(gen));
  b.put("flow", flow(gen, config, &diag));
  b.put("nn_dist", nn_distance(gen, config, &diag));
  b.put("mot_conf", mot_confidence(gen));
  b.put("geo_conf", geo_confidence(gen));
  if (r.geo_confidence_low()) diag.add("geo_conf_low");
  r.walking_speed = walking_speed_summary(gen, config);
  return r;
}

std::string to_json(const MetricReport& r) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(r.mode);
  for (const auto& [k, v] : r.values) j[k] = v;
  j["absent"] = r.absent;
  j["walking_speed"] = {{"count", r.walking_speed.count},
                        {"mean", r.walking_speed.mean},
                        {"std", r.walking_speed.stddev}};
  nlohmann::ordered_json diag;
  diag["counters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.diagnostics.counters()) diag["counters"][k] = v;
  diag["notes"] = r.diagnostics.notes();
  j["diagnostics"] = std::move(diag);
  j["config"] = config_json(r.config);
  j["seed"] = r.seed;
  return j.dump(2) + "\n";
}

}  // namespace pedeval::metrics
