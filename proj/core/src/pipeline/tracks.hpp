#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "pedeval/trajdata/types.hpp"

namespace pedeval::pipeline::detail {

struct TrackPoint {
  std::int64_t frame = 0;
  std::optional<Point2> position;  // unset when the point was dropped
  double confidence = 1.0;
  std::optional<double> geo_confidence;
};

struct TrackInput {
  AgentId id = 0;
  std::vector<TrackPoint> points;  // ordered by frame
};

struct BuiltTracks {
  std::vector<Trajectory> trajectories;
  std::size_t splits = 0;
};

// Cuts each track into contiguous runs of kept points. The first run keeps
// the track id, later runs take fresh ids above every input id.
inline BuiltTracks build_trajectories(const std::vector<TrackInput>& tracks, bool with_geo) {
  AgentId next_id = 0;
  for (const auto& t : tracks) next_id = std::max(next_id, t.id + 1);

  BuiltTracks out;
  for (const auto& t : tracks) {
    bool first_run = true;
    std::vector<Point2> pos;
    std::vector<double> conf, geo;
    std::int64_t start = 0, last = 0;
    auto flush = [&] {
      if (pos.empty()) return;
      const AgentId id = first_run ? t.id : next_id++;
      if (!first_run) ++out.splits;
      first_run = false;
      out.trajectories.emplace_back(id, start, std::move(pos), std::move(conf),
                                    with_geo ? std::move(geo) : std::vector<double>{});
      pos.clear();
      conf.clear();
      geo.clear();
    };
    for (const auto& p : t.points) {
      if (!p.position) {
        flush();
        continue;
      }
      if (!pos.empty() && p.frame != last + 1) flush();
      if (pos.empty()) start = p.frame;
      pos.push_back(*p.position);
      conf.push_back(p.confidence);
      geo.push_back(p.geo_confidence.value_or(1.0));
      last = p.frame;
    }
    flush();
  }
  return out;
}

}  // namespace pedeval::pipeline::detail
