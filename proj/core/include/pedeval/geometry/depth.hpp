#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pedeval/trajdata/types.hpp"

namespace pedeval::geometry {

/// Row-major depth grid, row 0 at the top of the image. A cell is valid when
/// its value is finite and strictly positive.
class DepthRaster {
 public:
  DepthRaster() = default;
  DepthRaster(int width, int height, std::vector<double> values);
  DepthRaster(int width, int height, double fill);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::span<const double> values() const noexcept { return values_; }

  double at(int x, int y) const { return values_[index(x, y)]; }
  void set(int x, int y, double v) { values_[index(x, y)] = v; }
  bool valid(int x, int y) const noexcept;
  bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  DepthRaster scaled(double factor) const;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

/// Depth rasters keyed by 0-based frame index.
using DepthSequence = std::map<std::int64_t, DepthRaster>;

/// Raster for `frame`, or the one at the nearest frame (earlier frame wins a
/// tie). nullptr when the sequence is empty.
const DepthRaster* nearest_raster(const DepthSequence& seq, std::int64_t frame);

/// Depth at a sub-pixel location, pixel centers at integer coordinates.
/// Bilinear when all four neighbours are valid; otherwise the nearest valid
/// cell within `fallback_radius` pixels. nullopt if none.
std::optional<double> sample_depth(const DepthRaster& depth, double u, double v, int fallback_radius = 3);

/// As sample_depth, for a point given in image pixels when the raster was
/// produced at a different resolution.
std::optional<double> sample_depth(const DepthRaster& depth, Point2 image_pixel,
                                   std::optional<ImageSize> image, int fallback_radius = 3);

/// Portable float map, one channel ("Pf"). Reading accepts either byte order;
/// writing is little-endian.
DepthRaster parse_pfm(std::string_view bytes);
DepthRaster read_pfm(const std::filesystem::path& path);
std::string write_pfm(const DepthRaster& raster);
void write_pfm(const DepthRaster& raster, const std::filesystem::path& path);

/// Loads every `<integer>.pfm` (or `<prefix>_<integer>.pfm`) in a directory.
DepthSequence read_depth_directory(const std::filesystem::path& dir);

}  // namespace pedeval::geometry
