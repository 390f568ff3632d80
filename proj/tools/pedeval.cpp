// pedeval: reconstruct BEV pedestrian trajectories and score them.
//
// Exit codes: 0 success (a rejected T2V clip is a success), 1 internal
// error, 2 usage or validation error. Errors are printed to stderr as
// {"code", "message", "context"} JSON.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pedeval/error.hpp"
#include "pedeval/geometry/camera.hpp"
#include "pedeval/geometry/depth.hpp"
#include "pedeval/geometry/homography.hpp"
#include "pedeval/keyvalue.hpp"
#include "pedeval/metrics/analysis.hpp"
#include "pedeval/metrics/plots.hpp"
#include "pedeval/metrics/report.hpp"
#include "pedeval/pipeline/config.hpp"
#include "pedeval/pipeline/i2v.hpp"
#include "pedeval/pipeline/t2v.hpp"
#include "pedeval/synthgen/synthgen.hpp"
#include "pedeval/trajdata/io.hpp"
#include "pedeval/trajdata/statistics.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Global {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
};

pedeval::pipeline::PipelineConfig load(const Global& g) {
  pedeval::KeyValues kv;
  if (!g.config_path.empty()) kv = pedeval::KeyValues::parse(pedeval::read_text_file(g.config_path));
  for (const auto& o : g.overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0)
      throw pedeval::Error(pedeval::ErrorCode::kValidation, "expected key=value", o);
    kv.set(o.substr(0, eq), o.substr(eq + 1));
  }
  auto config = pedeval::pipeline::apply_config(kv);
  kv.require_consumed();
  return config;
}

std::optional<pedeval::ImageSize> image_size(int w, int h) {
  if (w <= 0 && h <= 0) return std::nullopt;
  if (w <= 0 || h <= 0)
    throw pedeval::Error(pedeval::ErrorCode::kValidation, "image width and height must both be positive");
  return pedeval::ImageSize{w, h};
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    pedeval::write_text_file(out, text);
}

int print_error(const std::string& code, const std::string& message, const std::string& context, int exit_code) {
  ordered_json j{{"code", code}, {"message", message}, {"context", context}};
  std::cerr << j.dump() << '\n';
  return exit_code;
}

std::vector<pedeval::Scene> read_scenes(const std::vector<std::string>& paths) {
  std::vector<pedeval::Scene> scenes;
  for (const auto& p : paths) scenes.push_back(pedeval::read_scene(p));
  return scenes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pedestrian trajectory reconstruction and crowd-realism metrics"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--seed", g.seed, "Seed for every random choice (RANSAC, subsampling, synthesis)")
      ->each([&](const std::string&) { g.seed_given = true; });
  app.add_option("--config", g.config_path, "Settings file (key = value, [section] headers)");
  app.add_option("--set", g.overrides, "Override one setting, e.g. --set metrics.nn_radius_m=8");

  // project-i2v
  auto* i2v = app.add_subcommand("project-i2v", "Project pixel tracks to BEV through a homography");
  std::string i2v_tracklets, i2v_homography, i2v_out, i2v_cameras;
  double i2v_fps = 0.0;
  int i2v_w = 0, i2v_h = 0;
  i2v->add_option("--tracklets", i2v_tracklets, "MOTChallenge CSV")->required();
  i2v->add_option("--homography", i2v_homography, "Nine reals, world-from-pixel, row-major")->required();
  i2v->add_option("--fps", i2v_fps, "Video frame rate")->required();
  i2v->add_option("--out", i2v_out, "Scene CSV to write")->required();
  i2v->add_option("--cameras", i2v_cameras, "Camera JSON; when given the viewpoint must be static");
  i2v->add_option("--image-width", i2v_w);
  i2v->add_option("--image-height", i2v_h);

  // reconstruct-t2v
  auto* t2v = app.add_subcommand("reconstruct-t2v", "Reconstruct metric BEV tracks from cameras and depth");
  std::string t2v_tracklets, t2v_cameras, t2v_depth, t2v_metric, t2v_out, t2v_record, t2v_geo;
  double t2v_fps = 0.0;
  int t2v_w = 0, t2v_h = 0;
  t2v->add_option("--tracklets", t2v_tracklets, "MOTChallenge CSV")->required();
  t2v->add_option("--cameras", t2v_cameras, "Camera JSON")->required();
  t2v->add_option("--depth-dir", t2v_depth, "Relative depth PFMs, one per frame")->required();
  t2v->add_option("--metric-depth-dir", t2v_metric, "Metric depth PFMs for keyframes")->required();
  t2v->add_option("--fps", t2v_fps, "Video frame rate")->required();
  t2v->add_option("--out", t2v_out, "Scene CSV to write (skipped when the clip is rejected)")->required();
  t2v->add_option("--record", t2v_record, "Where to write the reconstruction record (default stdout)");
  t2v->add_option("--geo-conf-dir", t2v_geo, "Per-frame reconstruction-confidence PFMs");
  t2v->add_option("--image-width", t2v_w);
  t2v->add_option("--image-height", t2v_h);

  // metrics
  auto* met = app.add_subcommand("metrics", "Score generated scenes, absolute or against ground truth");
  std::vector<std::string> met_gen, met_gt;
  std::string met_mode, met_out, met_plots;
  met->add_option("--gen", met_gen, "Generated scene CSVs (pooled)")->required();
  met->add_option("--gt", met_gt, "Ground-truth scene CSVs (pooled)");
  met->add_option("--mode", met_mode, "i2v or t2v")->required()->check(CLI::IsMember({"i2v", "t2v"}));
  met->add_option("--out", met_out, "Report path (default stdout)");
  met->add_option("--plots-out", met_plots, "Directory for fundamental-diagram and polar-histogram CSVs");

  // synth
  auto* syn = app.add_subcommand("synth", "Generate a synthetic crowd scene");
  std::string syn_spec, syn_out, syn_fixture;
  syn->add_option("--spec", syn_spec, "Scenario file (key = value)");
  syn->add_option("--fixture", syn_fixture, "Name of an analytic fixture instead of a scenario");
  syn->add_option("--out", syn_out, "Scene CSV to write")->required();

  // stats
  auto* st = app.add_subcommand("stats", "Dataset statistics and accumulation check");
  std::vector<std::string> st_scenes;
  st->add_option("--scene", st_scenes, "Scene CSVs")->required();

  // config
  auto* cfg = app.add_subcommand("config", "Print the effective settings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return print_error("usage", e.what(), "", 2);
  }

  try {
    const auto config = load(g);

    if (*i2v) {
      const auto tracklets = pedeval::read_tracklets(i2v_tracklets, image_size(i2v_w, i2v_h));
      if (!i2v_cameras.empty()) {
        const auto cams = pedeval::geometry::read_cameras(i2v_cameras);
        if (cams.size() >= 2 && !pedeval::geometry::staticity_check(cams, 1.0, config.reconstruction.staticity))
          throw pedeval::Error(pedeval::ErrorCode::kValidation, "camera viewpoint is not static", i2v_cameras);
      }
      const auto h = pedeval::geometry::read_homography(i2v_homography);
      const auto r = pedeval::pipeline::project_i2v(tracklets, h, i2v_fps);
      pedeval::write_scene(r.scene, fs::path(i2v_out));
      ordered_json j{{"agents", r.scene.size()},
                     {"frames", r.scene.frame_count()},
                     {"dropped_points", r.dropped_points},
                     {"split_tracks", r.split_tracks}};
      std::cout << j.dump(2) << '\n';
    } else if (*t2v) {
      const auto tracklets = pedeval::read_tracklets(t2v_tracklets, image_size(t2v_w, t2v_h));
      const auto cams = pedeval::geometry::read_cameras(t2v_cameras);
      const auto rel = pedeval::geometry::read_depth_directory(t2v_depth);
      const auto metric = pedeval::geometry::read_depth_directory(t2v_metric);
      std::optional<pedeval::geometry::DepthSequence> geo;
      if (!t2v_geo.empty()) geo = pedeval::geometry::read_depth_directory(t2v_geo);
      const pedeval::pipeline::ReconstructionInput in{tracklets, cams, rel, metric, t2v_fps,
                                                       geo ? &*geo : nullptr};
      const auto r = pedeval::pipeline::reconstruct_t2v(in, config.reconstruction, g.seed);
      if (r.scene) pedeval::write_scene(*r.scene, fs::path(t2v_out));
      emit(pedeval::pipeline::to_json(r), t2v_record);
    } else if (*met) {
      const bool is_i2v = met_mode == "i2v";
      if (is_i2v && met_gt.empty())
        throw pedeval::Error(pedeval::ErrorCode::kValidation, "i2v mode needs --gt", "--gt");
      if (!is_i2v && !met_gt.empty())
        throw pedeval::Error(pedeval::ErrorCode::kValidation, "t2v mode takes no --gt", "--gt");
      const auto gen_scenes = read_scenes(met_gen);
      const auto gen = pedeval::metrics::analyze(gen_scenes, config.metrics);
      std::optional<pedeval::metrics::Corpus> gt;
      if (is_i2v) {
        const auto gt_scenes = read_scenes(met_gt);
        gt = pedeval::metrics::analyze(gt_scenes, config.metrics);
      }
      const auto report = is_i2v ? pedeval::metrics::evaluate_i2v(gen, *gt, config.metrics, g.seed)
                                 : pedeval::metrics::evaluate_t2v(gen, config.metrics, g.seed);
      emit(pedeval::metrics::to_json(report), met_out);
      if (!met_plots.empty()) {
        fs::create_directories(met_plots);
        auto export_plots = [&](const pedeval::metrics::Corpus& c, const std::string& prefix) {
          pedeval::write_text_file(fs::path(met_plots) / (prefix + "fundamental_diagram.csv"),
                                   pedeval::metrics::fundamental_diagram_csv(
                                       pedeval::metrics::fundamental_diagram(c, config.metrics)));
          pedeval::write_text_file(fs::path(met_plots) / (prefix + "nn_polar.csv"),
                                   pedeval::metrics::polar_histogram_csv(
                                       pedeval::metrics::nn_polar_histogram(c, config.metrics)));
        };
        export_plots(gen, "gen_");
        if (gt) export_plots(*gt, "gt_");
      }
    } else if (*syn) {
      if (syn_spec.empty() == syn_fixture.empty())
        throw pedeval::Error(pedeval::ErrorCode::kValidation, "give exactly one of --spec or --fixture");
      if (!syn_fixture.empty()) {
        auto fixtures = pedeval::synthgen::degenerate_fixtures();
        const auto it = fixtures.find(syn_fixture);
        if (it == fixtures.end())
          throw pedeval::Error(pedeval::ErrorCode::kValidation, "unknown fixture", syn_fixture);
        pedeval::write_scene(it->second, fs::path(syn_out));
      } else {
        auto spec = pedeval::synthgen::parse_scenario(pedeval::read_text_file(syn_spec));
        if (g.seed_given) spec.seed = g.seed;
        pedeval::write_scene(pedeval::synthgen::simulate(spec), fs::path(syn_out));
      }
    } else if (*st) {
      const auto scenes = read_scenes(st_scenes);
      ordered_json j;
      j["scenes"] = ordered_json::array();
      for (std::size_t i = 0; i < scenes.size(); ++i) {
        const auto s = pedeval::scene_statistics(scenes[i]);
        j["scenes"].push_back({{"path", st_scenes[i]},
                               {"n_detections", s.n_detections},
                               {"n_unique", s.n_unique},
                               {"frames", s.frame_count},
                               {"detections_per_frame", s.detections_per_frame}});
      }
      const auto total = pedeval::scene_statistics(scenes);
      j["total"] = {{"n_detections", total.n_detections},
                    {"n_unique", total.n_unique},
                    {"frames", total.frame_count},
                    {"detections_per_frame", total.detections_per_frame}};
      j["accumulation_sufficient"] = pedeval::accumulation_check(scenes, config.accumulation);
      std::cout << j.dump(2) << '\n';
    } else if (*cfg) {
      std::cout << pedeval::pipeline::to_text(config);
    }
  } catch (const pedeval::Error& e) {
    const int code = e.code() == pedeval::ErrorCode::kInternal ? 1 : 2;
    return print_error(pedeval::to_string(e.code()), e.what(), e.context(), code);
  } catch (const fs::filesystem_error& e) {
    return print_error("io", e.what(), e.path1().string(), 2);
  } catch (const std::exception& e) {
    return print_error("internal", e.what(), "", 1);
  }
  return 0;
}
