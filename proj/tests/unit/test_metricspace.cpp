#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "pedeval/error.hpp"
#include "pedeval/metricspace/metricspace.hpp"

using namespace pedeval;
using namespace pedeval::metricspace;

TEST(Emd, Examples) {
  const std::vector<double> a{1, 2, 3};
  EXPECT_EQ(emd_1d(a, a), 0.0);
  EXPECT_DOUBLE_EQ(emd_1d(std::vector<double>{0}, std::vector<double>{1}), 1.0);
  EXPECT_DOUBLE_EQ(emd_1d(std::vector<double>{0, 0}, std::vector<double>{0, 1}), 0.5);
  EXPECT_DOUBLE_EQ(emd_1d(std::vector<double>{0, 10}, std::vector<double>{5, 5}), 5.0);
}

TEST(Emd, EmptyIsError) {
  EXPECT_THROW(emd_1d(std::vector<double>{}, std::vector<double>{1}), Error);
}

TEST(Emd, MatchesTransportOracle) {
  testkit::Rng rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    const auto a = testkit::random_multiset(rng, testkit::uniform_size(rng, 1, 12), rep % 2 == 0);
    const auto b = testkit::random_multiset(rng, testkit::uniform_size(rng, 1, 12), rep % 3 == 0);
    EXPECT_NEAR(emd_1d(a, b), testkit::transport_emd(a, b), 1e-9);
  }
}

TEST(Emd, MetricProperties) {
  testkit::Rng rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const auto a = testkit::random_multiset(rng, testkit::uniform_size(rng, 1, 15), false);
    const auto b = testkit::random_multiset(rng, testkit::uniform_size(rng, 1, 15), false);
    const auto c = testkit::random_multiset(rng, testkit::uniform_size(rng, 1, 15), false);
    EXPECT_NEAR(emd_1d(a, b), emd_1d(b, a), 1e-12);
    EXPECT_LE(emd_1d(a, c), emd_1d(a, b) + emd_1d(b, c) + 1e-12);
    auto shuffled = a;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_NEAR(emd_1d(shuffled, b), emd_1d(a, b), 1e-12);
    // Shifting one side moves the distance by at most the shift.
    auto shifted = a;
    for (auto& x : shifted) x += 0.7;
    EXPECT_LE(std::abs(emd_1d(shifted, b) - emd_1d(a, b)), 0.7 + 1e-12);
  }
}

TEST(Dtw, Examples) {
  const std::vector<Point2> a{{0, 0}, {1, 1}, {2, 0}};
  EXPECT_EQ(dtw(a, a), 0.0);
  EXPECT_DOUBLE_EQ(dtw(std::vector<Point2>{{0, 0}}, std::vector<Point2>{{3, 4}}), 5.0);
}

TEST(Dtw, MatchesEnumeration) {
  testkit::Rng rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const auto a = testkit::random_polyline(rng, testkit::uniform_size(rng, 1, 8));
    const auto b = testkit::random_polyline(rng, testkit::uniform_size(rng, 1, 8));
    EXPECT_EQ(dtw(a, b), testkit::dtw_enumerate(a, b));
  }
}

TEST(Dtw, ParallelLinesCostOneMetrePerStep) {
  std::vector<Point2> a, b;
  for (int k = 0; k < 40; ++k) {
    a.push_back({0.1 * k, 0});
    b.push_back({0.1 * k, 1});
  }
  EXPECT_NEAR(dtw(a, b), 40.0, 1e-12);
}

TEST(Dtw, WideBandEqualsUnconstrained) {
  testkit::Rng rng(2);
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = testkit::random_polyline(rng, testkit::uniform_size(rng, 1, 15));
    const auto b = testkit::random_polyline(rng, testkit::uniform_size(rng, 1, 15));
    EXPECT_EQ(dtw(a, b, {.band = 100}), dtw(a, b));
    EXPECT_GE(dtw(a, b, {.band = 1}), dtw(a, b));
    EXPECT_NEAR(dtw(a, b), dtw(b, a), 1e-12);
  }
}

TEST(Knn, Examples) {
  const std::vector<Point2> cross{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  EXPECT_DOUBLE_EQ(*knn_radius({0, 0}, cross, 4), 1.0);
  const std::vector<Point2> line{{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}};
  EXPECT_DOUBLE_EQ(*knn_radius({0, 0}, line, 4), 4.0);
  EXPECT_FALSE(knn_radius({0, 0}, std::vector<Point2>{{1, 0}}, 4));
}

TEST(Knn, MatchesSortOracle) {
  testkit::Rng rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    const auto others = testkit::random_polyline(rng, 100);
    const Point2 q{testkit::uniform(rng, -3, 3), testkit::uniform(rng, -3, 3)};
    std::vector<double> d;
    for (const auto& p : others) d.push_back(distance(q, p));
    std::sort(d.begin(), d.end());
    const std::size_t k = testkit::uniform_size(rng, 1, 100);
    EXPECT_EQ(*knn_radius(q, others, k), d[k - 1]);
  }
}

TEST(Density, Formula) {
  EXPECT_DOUBLE_EQ(*local_density(1.0, 4), 4.0 / std::numbers::pi);
  EXPECT_DOUBLE_EQ(*local_density(2.0, 4), 1.0 / std::numbers::pi);
  EXPECT_FALSE(local_density(0.0, 4));
}

TEST(Kde, IdenticalSamples) {
  EXPECT_EQ(kde_mode(std::vector<double>(20, 0.3)), 0.3);
  EXPECT_EQ(kde_mode(std::vector<double>{0.7}), 0.7);
}

TEST(Kde, GaussianMode) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> n(0.25, 0.05);
  std::vector<double> s(10000);
  for (auto& x : s) x = n(rng);
  EXPECT_NEAR(kde_mode(s), 0.25, 0.02);
}

TEST(Kde, BimodalPicksHeavierMode) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> a(0.5, 0.03), b(0.75, 0.03);
  std::vector<double> s;
  for (int i = 0; i < 700; ++i) s.push_back(a(rng));
  for (int i = 0; i < 300; ++i) s.push_back(b(rng));
  EXPECT_NEAR(kde_mode(s), 0.5, 0.03);
}

TEST(Kde, TieGoesToSmallerValue) {
  // Symmetric pair with a narrow kernel: two equal peaks.
  const std::vector<double> s{0.0, 1.0};
  EXPECT_NEAR(kde_mode(s, {.bandwidth = 0.05, .grid_points = 513}), 0.0, 1e-12);
}

TEST(Kde, Silverman) {
  const std::vector<double> s{1, 2, 3, 4, 5};
  // sd = sqrt(2.5), IQR = 2 -> min(1.5811, 1.4925) = 1.4925
  EXPECT_NEAR(silverman_bandwidth(s), 0.9 * (2.0 / 1.34) * std::pow(5.0, -0.2), 1e-12);
}

TEST(Emd, QuantileOracleAgreesWithTransport) {
  testkit::Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto a = testkit::random_multiset(rng, testkit::uniform_size(rng, 1, 12), i % 2 == 0);
    const auto b = testkit::random_multiset(rng, testkit::uniform_size(rng, 1, 12), i % 3 == 0);
    EXPECT_NEAR(testkit::quantile_emd(a, b), testkit::transport_emd(a, b), 1e-9);
  }
}
