#include "pedeval/geometry/depth.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <limits>

#include "pedeval/error.hpp"
#include "pedeval/trajdata/io.hpp"

namespace pedeval::geometry {

DepthRaster::DepthRaster(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width_ <= 0 || height_ <= 0) throw Error(ErrorCode::kValidation, "raster dimensions must be positive");
  if (values_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
    throw Error(ErrorCode::kValidation, "raster value count does not match dimensions");
  }
}

DepthRaster::DepthRaster(int width, int height, double fill)
    : DepthRaster(width, height,
                  std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) *
                                          static_cast<std::size_t>(std::max(height, 0)),
                                      fill)) {}

bool DepthRaster::valid(int x, int y) const noexcept {
  if (!contains(x, y)) return false;
  const double v = values_[index(x, y)];
  return std::isfinite(v) && v > 0.0;
}

DepthRaster DepthRaster::scaled(double factor) const {
  DepthRaster out = *this;
  for (double& v : out.values_) v *= factor;
  return out;
}

const DepthRaster* nearest_raster(const DepthSequence& seq, std::int64_t frame) {
  if (seq.empty()) return nullptr;
  auto hi = seq.lower_bound(frame);
  if (hi != seq.end() && hi->first == frame) return &hi->second;
  if (hi == seq.begin()) return &hi->second;
  auto lo = std::prev(hi);
  if (hi == seq.end()) return &lo->second;
  return (frame - lo->first <= hi->first - frame) ? &lo->second : &hi->second;
}

std::optional<double> sample_depth(const DepthRaster& depth, double u, double v, int fallback_radius) {
  if (!std::isfinite(u) || !std::isfinite(v)) return std::nullopt;
  const double fu = std::floor(u);
  const double fv = std::floor(v);
  const double au = u - fu;
  const double av = v - fv;
  const int x0 = static_cast<int>(fu);
  const int y0 = static_cast<int>(fv);

  bool ok = true;
  double acc = 0.0;
  for (int dy = 0; dy <= 1 && ok; ++dy) {
    for (int dx = 0; dx <= 1; ++dx) {
      const double w = (dx ? au : 1.0 - au) * (dy ? av : 1.0 - av);
      if (w == 0.0) continue;
      if (!depth.valid(x0 + dx, y0 + dy)) {
        ok = false;
        break;
      }
      acc += w * depth.at(x0 + dx, y0 + dy);
    }
  }
  if (ok) return acc;

  const int r = fallback_radius;
  const int cx = static_cast<int>(std::lround(u));
  const int cy = static_cast<int>(std::lround(v));
  double best = std::numeric_limits<double>::infinity();
  std::optional<double> value;
  for (int y = cy - r - 1; y <= cy + r + 1; ++y) {
    for (int x = cx - r - 1; x <= cx + r + 1; ++x) {
      if (!depth.valid(x, y)) continue;
      const double d2 = (x - u) * (x - u) + (y - v) * (y - v);
      if (d2 <= static_cast<double>(r) * r && d2 < best) {
        best = d2;
        value = depth.at(x, y);
      }
    }
  }
  return value;
}

std::optional<double> sample_depth(const DepthRaster& depth, Point2 image_pixel,
                                   std::optional<ImageSize> image, int fallback_radius) {
  double u = image_pixel.x;
  double v = image_pixel.y;
  if (image && (image->width != depth.width() || image->height != depth.height())) {
    u = (u + 0.5) * depth.width() / image->width - 0.5;
    v = (v + 0.5) * depth.height() / image->height - 0.5;
  }
  return sample_depth(depth, u, v, fallback_radius);
}

namespace {

struct HeaderReader {
  std::string_view data;
  std::size_t pos = 0;

  std::string_view token() {
    while (pos < data.size() && std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
    return data.substr(start, pos - start);
  }
};

float load_float(const char* p, bool little_endian) {
  std::uint32_t bits;
  std::memcpy(&bits, p, 4);
  const bool host_little = std::endian::native == std::endian::little;
  if (host_little != little_endian) bits = __builtin_bswap32(bits);
  float f;
  std::memcpy(&f, &bits, 4);
  return f;
}

}  // namespace

DepthRaster parse_pfm(std::string_view bytes) {
  HeaderReader in{bytes};
  if (in.token() != "Pf") throw Error(ErrorCode::kParse, "not a single-channel PFM (expected 'Pf')");
  int w = 0, h = 0;
  double scale = 0.0;
  try {
    w = std::stoi(std::string(in.token()));
    h = std::stoi(std::string(in.token()));
    scale = std::stod(std::string(in.token()));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, "malformed PFM header");
  }
  if (w <= 0 || h <= 0 || scale == 0.0) throw Error(ErrorCode::kParse, "malformed PFM header");
  ++in.pos;  // single whitespace byte after the scale
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (bytes.size() < in.pos + 4 * n) throw Error(ErrorCode::kParse, "truncated PFM payload");

  const bool little = scale < 0.0;
  std::vector<double> values(n);
  const char* p = bytes.data() + in.pos;
  // PFM rows run bottom to top.
  for (int row = 0; row < h; ++row) {
    const int y = h - 1 - row;
    for (int x = 0; x < w; ++x) {
      values[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)] =
          static_cast<double>(load_float(p, little));
      p += 4;
    }
  }
  return DepthRaster(w, h, std::move(values));
}

DepthRaster read_pfm(const std::filesystem::path& path) {
  try {
    return parse_pfm(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), e.what(), path.string());
  }
}

std::string write_pfm(const DepthRaster& raster) {
  std::string out = "Pf\n" + std::to_string(raster.width()) + " " + std::to_string(raster.height()) + "\n-1\n";
  const std::size_t header = out.size();
  out.resize(header + 4 * raster.values().size());
  char* p = out.data() + header;
  for (int row = 0; row < raster.height(); ++row) {
    const int y = raster.height() - 1 - row;
    for (int x = 0; x < raster.width(); ++x) {
      const float f = static_cast<float>(raster.at(x, y));
      std::uint32_t bits;
      std::memcpy(&bits, &f, 4);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
      std::memcpy(p, &bits, 4);
      p += 4;
    }
  }
  return out;
}

void write_pfm(const DepthRaster& raster, const std::filesystem::path& path) {
  write_text_file(path, write_pfm(raster));
}

DepthSequence read_depth_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "depth directory does not exist", dir.string());
  }
  DepthSequence seq;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".pfm") continue;
    const std::string stem = entry.path().stem().string();
    std::size_t start = stem.size();
    while (start > 0 && std::isdigit(static_cast<unsigned char>(stem[start - 1]))) --start;
    if (start == stem.size()) continue;
    const std::int64_t frame = std::stoll(stem.substr(start));
    if (!seq.emplace(frame, read_pfm(entry.path())).second) {
      throw Error(ErrorCode::kValidation, "two depth files map to the same frame", entry.path().string());
    }
  }
  return seq;
}

}  // namespace pedeval::geometry
