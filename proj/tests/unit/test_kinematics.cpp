#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "pedeval/error.hpp"
#include "pedeval/kinematics/smoother.hpp"
#include "pedeval/kinematics/summary.hpp"

using namespace pedeval;
using namespace pedeval::kinematics;

namespace {

Trajectory linear(std::size_t n, Point2 velocity, double fps, Point2 origin = {}) {
  std::vector<Point2> p;
  for (std::size_t k = 0; k < n; ++k) p.push_back(origin + (static_cast<double>(k) / fps) * velocity);
  return {1, 0, std::move(p)};
}

}  // namespace

TEST(Smoother, StationaryIsFixedPoint) {
  const Trajectory t(1, 3, std::vector<Point2>(10, Point2{2.0, -1.0}));
  const auto s = kalman_smooth(t, 25.0);
  ASSERT_EQ(s.length(), 10u);
  EXPECT_EQ(s.start_frame, 3);
  for (std::size_t k = 0; k < 10; ++k) {
    EXPECT_NEAR(s.positions[k].x, 2.0, 1e-9);
    EXPECT_NEAR(s.positions[k].y, -1.0, 1e-9);
    EXPECT_LT(norm(s.velocities[k]), 1e-6);
  }
}

TEST(Smoother, SinglePointHasZeroVelocity) {
  const auto s = kalman_smooth(Trajectory(4, 0, {{1, 1}}), 10.0);
  EXPECT_EQ(s.velocities[0], (Point2{0, 0}));
  EXPECT_EQ(s.positions[0], (Point2{1, 1}));
}

TEST(Smoother, ExactLinearMotion) {
  const auto s = kalman_smooth(linear(50, {1.2, 0}, 25.0), 25.0);
  for (std::size_t k = 3; k + 3 < s.length(); ++k) {
    EXPECT_NEAR(norm(s.velocities[k]), 1.2, 0.012);
    EXPECT_NEAR(s.velocities[k].y, 0.0, 1e-9);
  }
}

TEST(Smoother, NoisyLinearMotion) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> noise(0.0, 0.05);
  const double fps = 25.0;
  double total = 0.0;
  int runs = 0;
  for (int rep = 0; rep < 20; ++rep) {
    auto clean = linear(200, {1.0, 0.6}, fps);
    std::vector<Point2> p(clean.positions().begin(), clean.positions().end());
    for (auto& q : p) q = q + Point2{noise(rng), noise(rng)};
    const auto s = kalman_smooth(Trajectory(1, 0, std::move(p)), fps);
    total += summarize(s, fps).mean_speed;
    ++runs;
  }
  EXPECT_NEAR(total / runs, std::hypot(1.0, 0.6), 0.05 * std::hypot(1.0, 0.6));
}

TEST(Smoother, RejectsBadFps) {
  EXPECT_THROW(kalman_smooth(linear(5, {1, 0}, 10), 0.0), Error);
}

TEST(Summary, ConstantVelocity) {
  const double fps = 10.0;
  const auto s = kalman_smooth(linear(31, {1, 0}, fps), fps);
  const auto sum = summarize(s, fps);
  EXPECT_EQ(sum.length, 31u);
  EXPECT_NEAR(sum.mean_speed, 1.0, 1e-6);
  EXPECT_NEAR(sum.mean_accel, 0.0, 1e-3);
  EXPECT_NEAR(sum.path_length, 3.0, 1e-6);
  EXPECT_NEAR(sum.displacement, 3.0, 1e-6);
  EXPECT_FALSE(sum.is_stationary);
}

TEST(Summary, SinglePoint) {
  const auto s = kalman_smooth(Trajectory(1, 0, {{0, 0}}), 10.0);
  const auto sum = summarize(s, 10.0);
  EXPECT_EQ(sum.mean_speed, 0.0);
  EXPECT_EQ(sum.mean_accel, 0.0);
  EXPECT_EQ(sum.path_length, 0.0);
  EXPECT_TRUE(sum.is_stationary);
}

TEST(Summary, TwoPointsHaveNoAcceleration) {
  const auto s = kalman_smooth(Trajectory(1, 0, {{0, 0}, {0.1, 0}}), 10.0);
  const auto sum = summarize(s, 10.0);
  EXPECT_GT(sum.mean_speed, 0.0);
  EXPECT_EQ(sum.mean_accel, 0.0);
}

TEST(Summary, ClosedCircleIsStationary) {
  const double fps = 25.0, radius = 2.0;
  const std::size_t n = 401;
  std::vector<Point2> p;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n - 1);
    p.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  const auto sum = summarize(kalman_smooth(Trajectory(1, 0, std::move(p)), fps), fps);
  EXPECT_TRUE(sum.is_stationary);
  EXPECT_NEAR(sum.path_length, 4.0 * std::numbers::pi, 0.05 * 4.0 * std::numbers::pi);
}

TEST(Summary, StationaryThresholdIsStrict) {
  const auto s = kalman_smooth(Trajectory(1, 0, {{0, 0}, {0.1, 0}, {0.2, 0}}), 10.0);
  EXPECT_FALSE(summarize(s, 10.0, 0.2).is_stationary);
  EXPECT_TRUE(summarize(s, 10.0, 0.2000001).is_stationary);
}

TEST(Summary, PathLengthBoundsDisplacement) {
  testkit::Rng rng(1);
  for (int rep = 0; rep < 50; ++rep) {
    const Trajectory t(1, 0, testkit::random_polyline(rng, testkit::uniform_size(rng, 1, 30)));
    const auto sum = summarize(kalman_smooth(t, 10.0), 10.0);
    EXPECT_GE(sum.path_length + 1e-12, sum.displacement);
    EXPECT_GE(sum.mean_speed, 0.0);
  }
}

TEST(Resample, SameFpsIsIdentity) {
  const auto t = linear(7, {1, 2}, 10.0, {3, 3});
  EXPECT_EQ(resample(t, 10.0, 10.0), t);
}

TEST(Resample, HalvingFpsKeepsEveryOtherPoint) {
  const auto t = linear(9, {1, 0}, 10.0);
  const auto r = resample(t, 10.0, 5.0);
  ASSERT_EQ(r.length(), 5u);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(r.positions()[k].x, t.positions()[2 * k].x, 1e-12);
}

TEST(Resample, UpsamplingInterpolates) {
  const Trajectory t(1, 0, {{0, 0}, {1, 0}});
  const auto r = resample(t, 1.0, 4.0);
  ASSERT_EQ(r.length(), 5u);
  EXPECT_NEAR(r.positions()[1].x, 0.25, 1e-12);
}
