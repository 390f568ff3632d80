#include "pedeval/trajdata/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "pedeval/error.hpp"

namespace pedeval {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits on '\n'; a trailing '\r' is removed by trim().
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = line.find(',', pos);
    if (end == std::string_view::npos) {
      fields.push_back(trim(line.substr(pos)));
      break;
    }
    fields.push_back(trim(line.substr(pos, end - pos)));
    pos = end + 1;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Integer fields sometimes come out of tools as "3.0".
bool parse_integer(std::string_view s, std::int64_t& out) {
  if (parse_number(s, out)) return true;
  double v = 0.0;
  if (!parse_number(s, v) || !std::isfinite(v) || v != std::floor(v)) return false;
  out = static_cast<std::int64_t>(v);
  return true;
}

std::string line_ctx(std::size_t line_no) { return "line " + std::to_string(line_no); }


}  // namespace

TrackletSet parse_tracklets(std::string_view text, std::optional<ImageSize> image) {
  std::vector<Detection> detections;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = trim(lines[n]);
    if (line.empty() || line.front() == '#') continue;
    const auto f = split_fields(line);
    const std::string ctx = line_ctx(n + 1);
    if (f.size() < 7) throw Error(ErrorCode::kParse, "expected at least 7 comma-separated fields", ctx);

    Detection d;
    std::int64_t frame = 0;
    if (!parse_integer(f[0], frame) || !parse_integer(f[1], d.track_id) ||
        !parse_number(f[2], d.left) || !parse_number(f[3], d.top) ||
        !parse_number(f[4], d.width) || !parse_number(f[5], d.height) ||
        !parse_number(f[6], d.confidence)) {
      throw Error(ErrorCode::kParse, "malformed numeric field", ctx);
    }
    if (frame < 1) throw Error(ErrorCode::kValidation, "frame numbers are 1-based", ctx);
    if (!(d.width > 0.0) || !(d.height > 0.0)) {
      throw Error(ErrorCode::kValidation, "bounding box must have positive size", ctx);
    }
    if (!std::isfinite(d.left) || !std::isfinite(d.top) || !std::isfinite(d.width) ||
        !std::isfinite(d.height) || !std::isfinite(d.confidence)) {
      throw Error(ErrorCode::kParse, "non-finite field", ctx);
    }
    d.frame = frame - 1;
    d.confidence = std::clamp(d.confidence, 0.0, 1.0);

    if (image) {
      const double x0 = std::clamp(d.left, 0.0, static_cast<double>(image->width));
      const double x1 = std::clamp(d.left + d.width, 0.0, static_cast<double>(image->width));
      const double y0 = std::clamp(d.top, 0.0, static_cast<double>(image->height));
      const double y1 = std::clamp(d.top + d.height, 0.0, static_cast<double>(image->height));
      if (!(x1 > x0) || !(y1 > y0)) {
        throw Error(ErrorCode::kValidation, "bounding box lies outside the image", ctx);
      }
      d.left = x0;
      d.top = y0;
      d.width = x1 - x0;
      d.height = y1 - y0;
    }
    detections.push_back(d);
  }
  return TrackletSet(std::move(detections), image);
}

TrackletSet read_tracklets(const std::filesystem::path& path, std::optional<ImageSize> image) {
  return parse_tracklets(read_text_file(path), image);
}

std::string write_tracklets(const TrackletSet& tracklets) {
  std::vector<Detection> rows(tracklets.detections().begin(), tracklets.detections().end());
  std::sort(rows.begin(), rows.end(), [](const Detection& a, const Detection& b) {
    return a.frame != b.frame ? a.frame < b.frame : a.track_id < b.track_id;
  });
  std::string out;
  for (const Detection& d : rows) {
    out += std::to_string(d.frame + 1) + ',' + std::to_string(d.track_id) + ',' +
           format_real(d.left) + ',' + format_real(d.top) + ',' + format_real(d.width) + ',' +
           format_real(d.height) + ',' + format_real(d.confidence) + ",-1,-1,-1\n";
  }
  return out;
}

Scene parse_scene(std::string_view text) {
  std::optional<double> fps;
  std::optional<std::int64_t> frames;
  bool have_header = false;
  std::size_t n_columns = 4;

  struct Row {
    std::int64_t frame;
    Point2 p;
    double conf;
    double geo;
    std::size_t line;
  };
  std::map<AgentId, std::vector<Row>> rows;

  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::string_view line = trim(lines[n]);
    const std::string ctx = line_ctx(n + 1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line = trim(line.substr(1));
      if (line.starts_with("fps=")) {
        double v = 0.0;
        if (!parse_number(trim(line.substr(4)), v)) throw Error(ErrorCode::kParse, "bad fps value", ctx);
        fps = v;
      } else if (line.starts_with("frames=")) {
        std::int64_t v = 0;
        if (!parse_integer(trim(line.substr(7)), v)) {
          throw Error(ErrorCode::kParse, "bad frames value", ctx);
        }
        frames = v;
      }
      continue;
    }
    const auto f = split_fields(line);
    if (!have_header) {
      if (f.size() < 4 || f[0] != "frame" || f[1] != "agent_id" || f[2] != "x_m" || f[3] != "y_m") {
        throw Error(ErrorCode::kParse, "expected header frame,agent_id,x_m,y_m", ctx);
      }
      if (f.size() >= 5 && f[4] != "conf") throw Error(ErrorCode::kParse, "unknown column", ctx);
      if (f.size() >= 6 && f[5] != "geo_conf") throw Error(ErrorCode::kParse, "unknown column", ctx);
      if (f.size() > 6) throw Error(ErrorCode::kParse, "too many columns", ctx);
      n_columns = f.size();
      have_header = true;
      continue;
    }
    if (f.size() != n_columns) throw Error(ErrorCode::kParse, "column count differs from header", ctx);
    Row r{0, {}, 1.0, 0.0, n + 1};
    AgentId id = 0;
    if (!parse_integer(f[0], r.frame) || !parse_integer(f[1], id) || !parse_number(f[2], r.p.x) ||
        !parse_number(f[3], r.p.y) || (n_columns >= 5 && !parse_number(f[4], r.conf)) ||
        (n_columns >= 6 && !parse_number(f[5], r.geo))) {
      throw Error(ErrorCode::kParse, "malformed numeric field", ctx);
    }
    if (r.frame < 0) throw Error(ErrorCode::kValidation, "negative frame index", ctx);
    rows[id].push_back(r);
  }
  if (!fps) throw Error(ErrorCode::kParse, "missing '# fps=<value>' line");
  if (!have_header && !rows.empty()) throw Error(ErrorCode::kParse, "missing header line");

  std::vector<Trajectory> trajectories;
  trajectories.reserve(rows.size());
  for (auto& [id, agent_rows] : rows) {
    std::sort(agent_rows.begin(), agent_rows.end(),
              [](const Row& a, const Row& b) { return a.frame < b.frame; });
    std::vector<Point2> pts;
    std::vector<double> conf, geo;
    for (std::size_t j = 0; j < agent_rows.size(); ++j) {
      const Row& r = agent_rows[j];
      if (j > 0 && r.frame != agent_rows[j - 1].frame + 1) {
        const char* what = r.frame == agent_rows[j - 1].frame ? "duplicate frame for agent"
                                                              : "gap in agent frame sequence";
        throw Error(ErrorCode::kValidation, what,
                    "agent " + std::to_string(id) + " " + line_ctx(r.line));
      }
      pts.push_back(r.p);
      if (n_columns >= 5) conf.push_back(r.conf);
      if (n_columns >= 6) geo.push_back(r.geo);
    }
    trajectories.emplace_back(id, agent_rows.front().frame, std::move(pts), std::move(conf),
                              std::move(geo));
  }
  if (frames) return Scene(std::move(trajectories), *fps, *frames);
  return Scene::with_inferred_frames(std::move(trajectories), *fps);
}

Scene read_scene(const std::filesystem::path& path) { return parse_scene(read_text_file(path)); }

std::string write_scene(const Scene& scene) {
  bool conf = false, geo = false;
  for (const Trajectory& t : scene.trajectories()) {
    conf = conf || t.has_confidence();
    geo = geo || t.has_geo_confidence();
  }
  conf = conf || geo;  // geo_conf is only valid as the sixth column

  std::string out = "# fps=" + format_real(scene.fps()) + "\n";
  out += "# frames=" + std::to_string(scene.frame_count()) + "\n";
  out += "frame,agent_id,x_m,y_m";
  if (conf) out += ",conf";
  if (geo) out += ",geo_conf";
  out += '\n';
  for (const Trajectory& t : scene.trajectories()) {
    const auto pts = t.positions();
    for (std::size_t j = 0; j < pts.size(); ++j) {
      out += std::to_string(t.start_frame() + static_cast<std::int64_t>(j)) + ',' +
             std::to_string(t.agent_id()) + ',' + format_real(pts[j].x) + ',' + format_real(pts[j].y);
      if (conf) out += ',' + format_real(t.confidence(j));
      if (geo) out += ',' + format_real(t.has_geo_confidence() ? t.geo_confidences()[j] : 0.0);
      out += '\n';
    }
  }
  return out;
}

void write_scene(const Scene& scene, const std::filesystem::path& path) {
  write_text_file(path, write_scene(scene));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open file for reading", path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open file for writing", path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed", path.string());
}

std::string format_real(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace pedeval
