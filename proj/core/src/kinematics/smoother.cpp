#include "pedeval/kinematics/smoother.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "pedeval/error.hpp"

namespace pedeval::kinematics {
namespace {

// One axis of the constant-velocity model; state is [position, velocity].
std::vector<Eigen::Vector2d> smooth_axis(const std::vector<double>& z, double dt, double v0,
                                         const SmootherConfig& cfg) {
  const std::size_t n = z.size();
  Eigen::Matrix2d F;
  F << 1.0, dt, 0.0, 1.0;
  const double q = cfg.accel_sigma * cfg.accel_sigma;
  Eigen::Matrix2d Q;
  Q << q * dt * dt * dt * dt / 4.0, q * dt * dt * dt / 2.0, q * dt * dt * dt / 2.0, q * dt * dt;
  const double r = cfg.measurement_sigma * cfg.measurement_sigma;

  std::vector<Eigen::Vector2d> xf(n), xp(n);
  std::vector<Eigen::Matrix2d> pf(n), pp(n);
  xf[0] = Eigen::Vector2d(z[0], v0);
  pf[0] << r, 0.0, 0.0, cfg.initial_velocity_var;
  xp[0] = xf[0];
  pp[0] = pf[0];

  for (std::size_t k = 1; k < n; ++k) {
    xp[k] = F * xf[k - 1];
    pp[k] = F * pf[k - 1] * F.transpose() + Q;
    const double s = pp[k](0, 0) + r;
    const Eigen::Vector2d gain = pp[k].col(0) / s;
    xf[k] = xp[k] + gain * (z[k] - xp[k](0));
    Eigen::Matrix2d ikh = Eigen::Matrix2d::Identity();
    ikh.col(0) -= gain;
    pf[k] = ikh * pp[k];
  }

  std::vector<Eigen::Vector2d> xs(n);
  xs[n - 1] = xf[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    const Eigen::Matrix2d c = pf[k] * F.transpose() * pp[k + 1].inverse();
    xs[k] = xf[k] + c * (xs[k + 1] - xp[k + 1]);
  }
  return xs;
}

}  // namespace

SmoothedTrajectory kalman_smooth(const Trajectory& trajectory, double fps, const SmootherConfig& config) {
  if (!(fps > 0.0) || !std::isfinite(fps)) throw Error(ErrorCode::kValidation, "fps must be positive and finite");
  const auto pts = trajectory.positions();
  for (const Point2& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::kValidation, "non-finite position", "agent " + std::to_string(trajectory.agent_id()));
    }
  }

  SmoothedTrajectory out;
  out.agent_id = trajectory.agent_id();
  out.start_frame = trajectory.start_frame();
  out.raw_start = pts.front();
  out.raw_end = pts.back();
  const std::size_t n = pts.size();
  if (n == 1) {
    out.positions = {pts.front()};
    out.velocities = {Point2{0.0, 0.0}};
    return out;
  }

  const double dt = 1.0 / fps;
  std::vector<double> zx(n), zy(n);
  for (std::size_t k = 0; k < n; ++k) {
    zx[k] = pts[k].x;
    zy[k] = pts[k].y;
  }
  const auto sx = smooth_axis(zx, dt, (zx[1] - zx[0]) * fps, config);
  const auto sy = smooth_axis(zy, dt, (zy[1] - zy[0]) * fps, config);
  out.positions.resize(n);
  out.velocities.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.positions[k] = {sx[k](0), sy[k](0)};
    out.velocities[k] = {sx[k](1), sy[k](1)};
  }
  return out;
}

Trajectory resample(const Trajectory& trajectory, double source_fps, double target_fps) {
  if (source_fps == target_fps) return trajectory;
  const auto pts = trajectory.positions();
  const double t0 = static_cast<double>(trajectory.start_frame()) / source_fps;
  const double t1 = static_cast<double>(trajectory.end_frame()) / source_fps;
  const auto k0 = static_cast<std::int64_t>(std::ceil(t0 * target_fps - 1e-9));
  const auto k1 = static_cast<std::int64_t>(std::floor(t1 * target_fps + 1e-9));

  auto sample = [&](double t, const auto& value) {
    const double s = std::clamp(t * source_fps - static_cast<double>(trajectory.start_frame()), 0.0,
                                static_cast<double>(pts.size() - 1));
    const auto j = static_cast<std::size_t>(std::floor(s));
    if (j + 1 >= pts.size()) return value(pts.size() - 1, 0.0);
    return value(j, s - static_cast<double>(j));
  };

  std::vector<Point2> out;
  std::vector<double> conf, geo;
  const auto conf_in = trajectory.confidences();
  const auto geo_in = trajectory.geo_confidences();
  auto push = [&](double t) {
    out.push_back(sample(t, [&](std::size_t j, double a) {
      return a == 0.0 ? pts[j] : (1.0 - a) * pts[j] + a * pts[j + 1];
    }));
    if (!conf_in.empty()) {
      conf.push_back(sample(t, [&](std::size_t j, double a) {
        return a == 0.0 ? conf_in[j] : (1.0 - a) * conf_in[j] + a * conf_in[j + 1];
      }));
    }
    if (!geo_in.empty()) {
      geo.push_back(sample(t, [&](std::size_t j, double a) {
        return a == 0.0 ? geo_in[j] : (1.0 - a) * geo_in[j] + a * geo_in[j + 1];
      }));
    }
  };

  std::int64_t start = k0;
  if (k1 < k0) {
    start = std::max<std::int64_t>(0, std::llround(t0 * target_fps));
    push(t0);
  } else {
    for (std::int64_t k = k0; k <= k1; ++k) push(static_cast<double>(k) / target_fps);
  }
  return Trajectory(trajectory.agent_id(), start, std::move(out), std::move(conf), std::move(geo));
}

}  // namespace pedeval::kinematics
