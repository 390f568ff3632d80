#include "pedeval/geometry/camera.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <json.hpp>

#include "pedeval/error.hpp"
#include "pedeval/trajdata/io.hpp"

namespace pedeval::geometry {

void CameraFrame::validate() const {
  const std::string ctx = "frame " + std::to_string(frame);
  if (!(fx > 0.0) || !(fy > 0.0)) throw Error(ErrorCode::kValidation, "focal lengths must be positive", ctx);
  if (!R.allFinite() || !t.allFinite() || !std::isfinite(cx) || !std::isfinite(cy)) {
    throw Error(ErrorCode::kValidation, "non-finite camera parameter", ctx);
  }
  if (((R.transpose() * R) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-6) {
    throw Error(ErrorCode::kValidation, "rotation is not orthonormal", ctx);
  }
}

CameraSequence parse_cameras(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("camera JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::kParse, "camera JSON must be an array");

  CameraSequence cams;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& o = doc[i];
    const std::string ctx = "camera entry " + std::to_string(i);
    try {
      CameraFrame c;
      c.frame = o.at("frame").get<std::int64_t>();
      c.fx = o.at("fx").get<double>();
      c.fy = o.at("fy").get<double>();
      c.cx = o.at("cx").get<double>();
      c.cy = o.at("cy").get<double>();
      const auto r = o.at("R").get<std::vector<double>>();
      const auto t = o.at("t").get<std::vector<double>>();
      if (r.size() != 9 || t.size() != 3) throw Error(ErrorCode::kParse, "R needs 9 and t needs 3 values", ctx);
      for (int k = 0; k < 9; ++k) c.R(k / 3, k % 3) = r[static_cast<std::size_t>(k)];
      c.t = Eigen::Vector3d(t[0], t[1], t[2]);
      c.validate();
      if (!cams.emplace(c.frame, c).second) throw Error(ErrorCode::kValidation, "duplicate camera frame", ctx);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, std::string("camera JSON: ") + e.what(), ctx);
    }
  }
  return cams;
}

CameraSequence read_cameras(const std::filesystem::path& path) { return parse_cameras(read_text_file(path)); }

std::string write_cameras(const CameraSequence& cameras) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [frame, c] : cameras) {
    nlohmann::ordered_json o;
    o["frame"] = frame;
    o["fx"] = c.fx;
    o["fy"] = c.fy;
    o["cx"] = c.cx;
    o["cy"] = c.cy;
    std::vector<double> r(9);
    for (int k = 0; k < 9; ++k) r[static_cast<std::size_t>(k)] = c.R(k / 3, k % 3);
    o["R"] = r;
    o["t"] = std::vector<double>{c.t.x(), c.t.y(), c.t.z()};
    arr.push_back(std::move(o));
  }
  return arr.dump(1) + "\n";
}

Eigen::Vector3d backproject(const CameraFrame& cam, Point2 pixel, double z_cam) {
  return {(pixel.x - cam.cx) * z_cam / cam.fx, (pixel.y - cam.cy) * z_cam / cam.fy, z_cam};
}

Eigen::Vector3d camera_to_world(const CameraFrame& cam, double lambda, const Eigen::Vector3d& p_cam) {
  return cam.R * p_cam + lambda * cam.t;
}

Eigen::Vector3d world_to_camera(const CameraFrame& cam, double lambda, const Eigen::Vector3d& p_world) {
  return cam.R.transpose() * (p_world - lambda * cam.t);
}

std::optional<Point2> project_to_pixel(const CameraFrame& cam, double lambda, const Eigen::Vector3d& p_world) {
  const Eigen::Vector3d p = world_to_camera(cam, lambda, p_world);
  if (!(p.z() > 0.0)) return std::nullopt;
  return Point2{cam.fx * p.x() / p.z() + cam.cx, cam.fy * p.y() / p.z() + cam.cy};
}

std::optional<Eigen::Vector3d> unproject_to_world(const CameraFrame& cam, double lambda,
                                                  const DepthRaster& depth, Point2 pixel,
                                                  std::optional<ImageSize> image, int fallback_radius) {
  const auto d = sample_depth(depth, pixel, image, fallback_radius);
  if (!d) return std::nullopt;
  return camera_to_world(cam, lambda, backproject(cam, pixel, lambda * *d));
}

Unprojection unproject_to_world(const CameraFrame& cam, double lambda, const DepthRaster& depth,
                                std::span<const Point2> pixels, std::optional<ImageSize> image,
                                int fallback_radius) {
  Unprojection out;
  out.points.reserve(pixels.size());
  for (const Point2& p : pixels) {
    out.points.push_back(unproject_to_world(cam, lambda, depth, p, image, fallback_radius));
    if (!out.points.back()) ++out.dropped;
  }
  return out;
}

bool staticity_check(std::span<const CameraFrame> cameras, double lambda, const StaticityThresholds& thresholds) {
  if (cameras.size() < 2) throw Error(ErrorCode::kValidation, "staticity check needs at least two frames");
  const double max_angle = thresholds.max_rotation_deg * std::numbers::pi / 180.0;
  for (std::size_t k = 1; k < cameras.size(); ++k) {
    const CameraFrame& a = cameras[k - 1];
    const CameraFrame& b = cameras[k];
    if ((lambda * (b.t - a.t)).norm() >= thresholds.max_translation_m) return false;
    const Eigen::Matrix3d rel = a.R.transpose() * b.R;
    const double c = std::clamp((rel.trace() - 1.0) / 2.0, -1.0, 1.0);
    if (std::acos(c) >= max_angle) return false;
  }
  return true;
}

bool staticity_check(const CameraSequence& cameras, double lambda, const StaticityThresholds& thresholds) {
  std::vector<CameraFrame> ordered;
  ordered.reserve(cameras.size());
  for (const auto& [frame, cam] : cameras) ordered.push_back(cam);
  return staticity_check(std::span<const CameraFrame>(ordered), lambda, thresholds);
}

}  // namespace pedeval::geometry
