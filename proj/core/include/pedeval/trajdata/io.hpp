#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pedeval/trajdata/types.hpp"

namespace pedeval {

/// Parses MOTChallenge rows `frame,id,left,top,width,height,conf,...`.
/// Frames are 1-based in the file and 0-based in the result. When `image` is
/// given, boxes are clipped to the image rectangle.
TrackletSet parse_tracklets(std::string_view text, std::optional<ImageSize> image = std::nullopt);
TrackletSet read_tracklets(const std::filesystem::path& path,
                           std::optional<ImageSize> image = std::nullopt);
std::string write_tracklets(const TrackletSet& tracklets);

/// Scene CSV:
///   # fps=<real>
///   # frames=<K>            (optional; inferred when absent)
///   frame,agent_id,x_m,y_m[,conf[,geo_conf]]
Scene parse_scene(std::string_view text);
Scene read_scene(const std::filesystem::path& path);
std::string write_scene(const Scene& scene);
void write_scene(const Scene& scene, const std::filesystem::path& path);

/// Shortest text that reads back to the same double.
std::string format_real(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace pedeval
