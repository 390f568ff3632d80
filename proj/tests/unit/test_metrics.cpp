#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "pedeval/error.hpp"
#include "pedeval/metrics/metrics.hpp"
#include "pedeval/metrics/plots.hpp"
#include "pedeval/metrics/report.hpp"
#include "pedeval/metricspace/metricspace.hpp"
#include "pedeval/synthgen/synthgen.hpp"

using namespace pedeval;
using namespace pedeval::metrics;

namespace {

Corpus corpus_of(const Scene& s, const MetricConfig& cfg = {}) { return {analyze(s, cfg)}; }

const Scene& fixture(const std::string& name) {
  static const auto all = synthgen::degenerate_fixtures();
  return all.at(name);
}

Trajectory walk(AgentId id, Point2 start, Point2 velocity, double fps, std::int64_t frames, std::int64_t first = 0,
                std::vector<double> conf = {}) {
  std::vector<Point2> p;
  for (std::int64_t k = 0; k < frames; ++k) p.push_back(start + (static_cast<double>(k) / fps) * velocity);
  return {id, first, std::move(p), std::move(conf)};
}

// `stationary` agents that never move plus `moving` agents that walk 1 m.
Scene stationary_mix(std::size_t stationary, std::size_t moving) {
  std::vector<Trajectory> t;
  for (std::size_t i = 0; i < stationary + moving; ++i) {
    const Point2 v = i < stationary ? Point2{0, 0} : Point2{2.5, 0};
    t.push_back(walk(static_cast<AgentId>(i), {0, 3.0 * static_cast<double>(i)}, v, 10, 5));
  }
  return Scene(std::move(t), 10.0, 5);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i);
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

}  // namespace

TEST(Velocity, IdenticalScenesScoreZero) {
  const auto c = corpus_of(fixture("lattice_0p75"));
  EXPECT_EQ(velocity(c, c), 0.0);
  EXPECT_EQ(acceleration(c, c), 0.0);
  EXPECT_EQ(distance_traveled(c, c), 0.0);
}

TEST(Velocity, AbsoluteWalkingSpeed) {
  const auto c = corpus_of(fixture("lattice_0p75"));
  EXPECT_NEAR(velocity(c), 1.3, 1e-9);
  EXPECT_NEAR(acceleration(c), 0.0, 1e-9);
  EXPECT_NEAR(distance_traveled(c), 1.3 * 4.9, 1e-9);
}

TEST(Velocity, EmptyAgentSetIsError) {
  const auto empty = corpus_of(Scene({}, 10.0, 3));
  const auto full = corpus_of(fixture("single_line"));
  try {
    velocity(empty, full);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
    EXPECT_EQ(e.context(), "gen");
  }
  EXPECT_THROW(velocity(empty), Error);
}

TEST(Velocity, EmdOfPerAgentMeans) {
  const Scene a({walk(1, {0, 0}, {1, 0}, 10, 20), walk(2, {0, 5}, {2, 0}, 10, 20)}, 10, 20);
  const Scene b({walk(1, {0, 0}, {1.5, 0}, 10, 20)}, 10, 20);
  // {1, 2} vs {1.5}: each unit moves 0.5.
  EXPECT_NEAR(velocity(corpus_of(a), corpus_of(b)), 0.5, 1e-9);
}

TEST(PathError, TranslatedSingleAgent) {
  const Scene gt({walk(1, {0, 0}, {1, 0}, 25, 25)}, 25, 25);
  const Scene gen({walk(1, {0, 1}, {1, 0}, 25, 25)}, 25, 25);
  EXPECT_NEAR(path_error(corpus_of(gen), corpus_of(gt)), 1.0, 1e-12);
}

TEST(PathError, MatchesPairwiseBruteForce) {
  testkit::Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Trajectory> g, t;
    for (AgentId i = 0; i < 2; ++i) g.emplace_back(i, 0, testkit::random_polyline(rng, testkit::uniform_size(rng, 2, 8)));
    t.emplace_back(0, 0, testkit::random_polyline(rng, testkit::uniform_size(rng, 2, 8)));
    const Scene gen(g, 10, 8), gt(t, 10, 8);
    auto d = [](const Trajectory& a, const Trajectory& b) { return metricspace::dtw(a.positions(), b.positions()); };
    const double gen_to_gt = (d(g[0], t[0]) + d(g[1], t[0])) / 2.0;
    const double gt_to_gen = std::min(d(t[0], g[0]), d(t[0], g[1]));
    EXPECT_NEAR(path_error(corpus_of(gen), corpus_of(gt)), (gen_to_gt + gt_to_gen) / 20.0, 1e-12);
  }
}

TEST(PathError, ResamplesGeneratedFps) {
  const Scene gt({walk(1, {0, 0}, {1, 0}, 25, 51)}, 25, 51);
  const Scene gen({walk(1, {0, 0}, {1, 0}, 10, 21)}, 10, 21);
  Diagnostics diag;
  EXPECT_NEAR(path_error(corpus_of(gen), corpus_of(gt), &diag), 0.0, 1e-9);
  EXPECT_EQ(diag.count("fps_resampled_scenes"), 1);
}

TEST(PathDiversity, IdenticalDistinctScenes) {
  const auto c = corpus_of(fixture("lattice_0p75"));
  EXPECT_EQ(path_diversity(c, c), 1.0);
}

TEST(PathDiversity, CollapsedGeneration) {
  const auto& gt = fixture("lattice_0p75");
  const auto& path = gt.trajectories()[5];
  const auto n_gt = static_cast<double>(gt.size());
  auto copies = [&](std::size_t n) {
    std::vector<Trajectory> t;
    for (std::size_t i = 0; i < n; ++i)
      t.emplace_back(static_cast<AgentId>(i), path.start_frame(),
                     std::vector<Point2>(path.positions().begin(), path.positions().end()));
    return corpus_of(Scene(std::move(t), gt.fps(), gt.frame_count()));
  };
  // One collapsed path: every ground-truth path matches it.
  EXPECT_NEAR(path_diversity(copies(1), corpus_of(gt)), 0.5 * (1.0 / n_gt + 1.0), 1e-12);
  // Several copies: ties resolve to the first copy, so one of them is covered.
  EXPECT_NEAR(path_diversity(copies(4), corpus_of(gt)), 0.5 * (1.0 / n_gt + 1.0 / 4.0), 1e-12);
}

TEST(PathDiversity, MatchesBruteForce) {
  testkit::Rng rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<Trajectory> g, t;
    const auto ng = testkit::uniform_size(rng, 1, 6), nt = testkit::uniform_size(rng, 1, 6);
    for (std::size_t i = 0; i < ng; ++i) g.emplace_back(static_cast<AgentId>(i), 0, testkit::random_polyline(rng, 5));
    for (std::size_t i = 0; i < nt; ++i) t.emplace_back(static_cast<AgentId>(i), 0, testkit::random_polyline(rng, 5));
    auto cover = [](const std::vector<Trajectory>& a, const std::vector<Trajectory>& b) {
      std::set<std::size_t> hit;
      for (const auto& x : a) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < b.size(); ++j)
          if (metricspace::dtw(x.positions(), b[j].positions()) < metricspace::dtw(x.positions(), b[best].positions()))
            best = j;
        hit.insert(best);
      }
      return static_cast<double>(hit.size()) / static_cast<double>(b.size());
    };
    const double expected = 0.5 * (cover(g, t) + cover(t, g));
    const double got = path_diversity(corpus_of(Scene(g, 10, 5)), corpus_of(Scene(t, 10, 5)));
    EXPECT_NEAR(got, expected, 1e-12);
    EXPECT_GT(got, 0.0);
    EXPECT_LE(got, 1.0);
  }
}

TEST(InternalDiversity, IdenticalTrajectoriesScoreZero) {
  const auto c = corpus_of(fixture("colocated_pair"));
  EXPECT_EQ(*internal_diversity(c), 0.0);
}

TEST(InternalDiversity, ParallelLines) {
  const auto& s = fixture("parallel_walkers");
  const double length = static_cast<double>(s.trajectories()[0].length());
  EXPECT_NEAR(*internal_diversity(corpus_of(s)), length / s.fps(), 1e-12);
}

TEST(InternalDiversity, FiveAgentsMatchAllPairs) {
  testkit::Rng rng(41);
  std::vector<Trajectory> t;
  for (AgentId i = 0; i < 5; ++i) t.emplace_back(i, 0, testkit::random_polyline(rng, testkit::uniform_size(rng, 2, 12)));
  const Scene s(t, 10, 12);
  double sum = 0.0;
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = a + 1; b < 5; ++b) sum += metricspace::dtw(t[a].positions(), t[b].positions());
  MetricConfig cfg;
  cfg.internal_diversity_subsample = 5;
  EXPECT_NEAR(*internal_diversity(corpus_of(s), cfg), sum / 10.0 / 10.0, 1e-12);
}

TEST(InternalDiversity, SubsampleIsSeeded) {
  testkit::Rng rng(2);
  std::vector<Trajectory> t;
  for (AgentId i = 0; i < 30; ++i) t.emplace_back(i, 0, testkit::random_polyline(rng, 6));
  const auto c = corpus_of(Scene(t, 10, 6));
  MetricConfig cfg;
  cfg.internal_diversity_subsample = 8;
  Diagnostics diag;
  const auto a = internal_diversity(c, cfg, 7, &diag);
  EXPECT_EQ(a, internal_diversity(c, cfg, 7));
  EXPECT_EQ(diag.count("internal_diversity_subsampled_from"), 30);
}

TEST(InternalDiversity, SingleAgentAbsent) {
  Diagnostics diag;
  EXPECT_FALSE(internal_diversity(corpus_of(fixture("single_line")), {}, 0, &diag));
  EXPECT_EQ(diag.count("internal_diversity_too_few_agents"), 1);
}

TEST(Collision, Examples) {
  EXPECT_EQ(collision(corpus_of(fixture("parallel_walkers"))), 0.0);
  EXPECT_EQ(collision(corpus_of(fixture("colocated_pair"))), 100.0);
  const auto crossing = corpus_of(fixture("crossing_paths"));
  EXPECT_GT(collision(crossing), 0.0);
  EXPECT_DOUBLE_EQ(collision(crossing), testkit::brute_collision_percent(crossing, 0.1));
}

TEST(Collision, ThresholdIsStrict) {
  auto pair_at = [](double gap) {
    return corpus_of(Scene({walk(1, {0, 0}, {1, 0}, 10, 3), walk(2, {0, gap}, {1, 0}, 10, 3)}, 10, 3));
  };
  EXPECT_EQ(collision(pair_at(0.1)), 0.0);
  EXPECT_EQ(collision(pair_at(0.0999)), 100.0);
}

TEST(Collision, I2VComparesPerFrameCountMultisets) {
  const auto a = corpus_of(fixture("colocated_pair"));
  const auto b = corpus_of(fixture("parallel_walkers"));
  EXPECT_DOUBLE_EQ(collision(a, b), 2.0);
  EXPECT_EQ(collision(a, a), 0.0);
}

TEST(Stationary, Examples) {
  EXPECT_EQ(stationary(corpus_of(fixture("all_stationary"))), 1.0);
  const auto p3 = corpus_of(stationary_mix(3, 7));
  EXPECT_NEAR(stationary(p3), 0.3, 1e-15);
  EXPECT_EQ(stationary(p3, corpus_of(stationary_mix(6, 14))), 0.0);
  EXPECT_NEAR(stationary(corpus_of(stationary_mix(5, 5)), corpus_of(stationary_mix(2, 8))), 0.3, 1e-12);
}

TEST(Stationary, ClosedFormMatchesTransportOracle) {
  testkit::Rng rng(77);
  for (int rep = 0; rep < 30; ++rep) {
    const auto sa = testkit::uniform_size(rng, 0, 8), ma = testkit::uniform_size(rng, 0, 8);
    const auto sb = testkit::uniform_size(rng, 0, 8), mb = testkit::uniform_size(rng, 0, 8);
    if (sa + ma == 0 || sb + mb == 0) continue;
    const double fa = static_cast<double>(sa) / static_cast<double>(sa + ma);
    const double fb = static_cast<double>(sb) / static_cast<double>(sb + mb);
    std::vector<double> ia(sa, 1.0), ib(sb, 1.0);
    ia.resize(sa + ma, 0.0);
    ib.resize(sb + mb, 0.0);
    const double got = stationary(corpus_of(stationary_mix(sa, ma)), corpus_of(stationary_mix(sb, mb)));
    EXPECT_NEAR(got, std::abs(fa - fb), 1e-12);
    EXPECT_NEAR(got, testkit::transport_emd(ia, ib), 1e-12);
  }
}

TEST(Population, Examples) {
  EXPECT_EQ(*population(corpus_of(stationary_mix(2, 3))), 5.0);
  // Counts {0, 10} against {5, 5}.
  std::vector<Trajectory> late, steady;
  for (AgentId i = 0; i < 10; ++i) late.push_back(walk(i, {2.0 * static_cast<double>(i), 0}, {0, 0}, 10, 1, 1));
  for (AgentId i = 0; i < 5; ++i) steady.push_back(walk(i, {2.0 * static_cast<double>(i), 0}, {0, 0}, 10, 2));
  const auto burst = corpus_of(Scene(std::move(late), 10, 2));
  EXPECT_EQ(population_counts(burst), (std::vector<double>{0, 10}));
  EXPECT_DOUBLE_EQ(*population(burst, corpus_of(Scene(std::move(steady), 10, 2))), 5.0);
  EXPECT_EQ(*population(burst, burst), 0.0);
}

TEST(Population, EmptyCorpusAbsent) {
  EXPECT_FALSE(population(Corpus{}));
}

TEST(Flow, FiveAgentLine) {
  std::vector<Trajectory> t;
  for (AgentId i = 0; i < 5; ++i) t.push_back(walk(i, {static_cast<double>(i), 0}, {1, 0}, 10, 10));
  const auto c = corpus_of(Scene(t, 10, 10));
  const auto flows = directional_flows(c);
  EXPECT_TRUE(flows.y.empty());
  ASSERT_EQ(flows.x.size(), 50u);
  // Fourth-nearest radii along the line are 4, 3, 2, 3, 4.
  const double rho_mean = 4.0 / std::numbers::pi * (2.0 / 16.0 + 2.0 / 9.0 + 1.0 / 4.0) / 5.0;
  Diagnostics diag;
  EXPECT_NEAR(*flow(c, {}, &diag), rho_mean, 1e-9);
  EXPECT_EQ(diag.count("flow_single_direction"), 1);
  EXPECT_EQ(*flow(c, c), 0.0);
}

TEST(Flow, NeedsKPlusOneAgents) {
  std::vector<Trajectory> t;
  for (AgentId i = 0; i < 4; ++i) t.push_back(walk(i, {static_cast<double>(i), 0}, {1, 0}, 10, 3));
  Diagnostics diag;
  EXPECT_FALSE(flow(corpus_of(Scene(t, 10, 3)), {}, &diag));
  EXPECT_EQ(diag.count("flow_no_samples"), 1);
  EXPECT_EQ(diag.count("density_sparse_samples"), 12);
  t.push_back(walk(9, {9, 0}, {1, 0}, 10, 3));
  EXPECT_TRUE(flow(corpus_of(Scene(t, 10, 3))));
}

TEST(Flow, DiagonalTiesExcluded) {
  std::vector<Trajectory> t;
  // Identical x and y sequences make the smoothed components tie exactly.
  for (AgentId i = 0; i < 6; ++i) t.push_back(walk(i, {static_cast<double>(i), static_cast<double>(i)}, {1, 1}, 10, 4));
  Diagnostics diag;
  const auto f = directional_flows(corpus_of(Scene(t, 10, 4)), {}, &diag);
  EXPECT_TRUE(f.x.empty());
  EXPECT_TRUE(f.y.empty());
  EXPECT_EQ(diag.count("flow_direction_ties"), 24);
}

TEST(Flow, InvariantUnderAxisReflection) {
  testkit::Rng rng(15);
  for (int rep = 0; rep < 10; ++rep) {
    const Scene s = testkit::random_scene(rng);
    std::vector<Trajectory> mirrored;
    for (const auto& t : s.trajectories()) {
      std::vector<Point2> p;
      for (const auto& q : t.positions()) p.push_back({-q.x, q.y});
      mirrored.emplace_back(t.agent_id(), t.start_frame(), std::move(p));
    }
    const auto a = flow(corpus_of(s));
    const auto b = flow(corpus_of(Scene(std::move(mirrored), s.fps(), s.frame_count())));
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) EXPECT_NEAR(*a, *b, 1e-9);
  }
}

TEST(NearestNeighbour, Examples) {
  EXPECT_NEAR(*nn_distance(corpus_of(fixture("side_by_side_0p6"))), 0.6, 1e-9);
  EXPECT_NEAR(*nn_distance(corpus_of(fixture("lattice_0p75"))), 0.75, 1e-9);
  Diagnostics diag;
  EXPECT_FALSE(nn_distance(corpus_of(fixture("all_stationary")), {}, &diag));
  EXPECT_EQ(diag.count("nn_no_samples"), 1);
}

TEST(NearestNeighbour, RadiusIsInclusive) {
  auto pair_at = [](double gap) {
    return corpus_of(Scene({walk(1, {0, 0}, {1, 0}, 10, 3), walk(2, {0, gap}, {1, 0}, 10, 3)}, 10, 3));
  };
  EXPECT_EQ(nn_distances(pair_at(10.0)).size(), 6u);
  EXPECT_TRUE(nn_distances(pair_at(10.01)).empty());
}

TEST(NearestNeighbour, MovingThresholdIsStrict) {
  // Movers must exceed 0.1 m/s.
  auto pair_at = [](double speed) {
    return corpus_of(Scene({walk(1, {0, 0}, {speed, 0}, 10, 4), walk(2, {0, 1}, {speed, 0}, 10, 4)}, 10, 4));
  };
  EXPECT_TRUE(nn_distances(pair_at(0.099)).empty());
  EXPECT_EQ(nn_distances(pair_at(0.101)).size(), 8u);
}

TEST(Oracles, RandomScenesMatchBruteForce) {
  testkit::Rng rng(2024);
  const MetricConfig cfg;
  for (int rep = 0; rep < 40; ++rep) {
    const auto gen = corpus_of(testkit::random_scene(rng));
    const auto gt = corpus_of(testkit::random_scene(rng));
    EXPECT_EQ(collision_counts(gen), testkit::brute_collision_counts(gen, 0.1));
    EXPECT_NEAR(collision(gen), testkit::brute_collision_percent(gen, 0.1), 1e-9);
    EXPECT_NEAR(collision(gen, gt),
                testkit::quantile_emd(testkit::brute_collision_counts(gen, 0.1),
                                       testkit::brute_collision_counts(gt, 0.1)),
                1e-9);

    const auto bf = testkit::brute_flows(gen, 4);
    const auto f = directional_flows(gen);
    ASSERT_EQ(f.x.size(), bf.x.size());
    ASSERT_EQ(f.y.size(), bf.y.size());
    for (std::size_t i = 0; i < f.x.size(); ++i) EXPECT_NEAR(f.x[i], bf.x[i], 1e-9);
    const auto t2v = flow(gen), bt2v = testkit::brute_flow_t2v(gen, 4);
    ASSERT_EQ(t2v.has_value(), bt2v.has_value());
    if (t2v) EXPECT_NEAR(*t2v, *bt2v, 1e-9);
    const auto i2v = flow(gen, gt), bi2v = testkit::brute_flow_i2v(gen, gt, 4);
    ASSERT_EQ(i2v.has_value(), bi2v.has_value());
    if (i2v) EXPECT_NEAR(*i2v, *bi2v, 1e-9);

    const auto nn = nn_distances(gen), bnn = testkit::brute_nn_distances(gen, 0.1, 10.0);
    ASSERT_EQ(nn.size(), bnn.size());
    for (std::size_t i = 0; i < nn.size(); ++i) EXPECT_NEAR(nn[i], bnn[i], 1e-9);
  }
}

TEST(Confidence, AgentMeanOfMeans) {
  const Scene all_half({walk(1, {0, 0}, {1, 0}, 10, 3, 0, {0.5, 0.5, 0.5}), walk(2, {0, 2}, {1, 0}, 10, 2, 0, {0.5, 0.5})},
                       10, 3);
  EXPECT_DOUBLE_EQ(*mot_confidence(corpus_of(all_half)), 0.5);
  const Scene uneven({walk(1, {0, 0}, {1, 0}, 10, 2, 0, {1, 1}), walk(2, {0, 2}, {1, 0}, 10, 1, 0, {0})}, 10, 2);
  EXPECT_DOUBLE_EQ(*mot_confidence(corpus_of(uneven)), 0.5);
  EXPECT_FALSE(mot_confidence(corpus_of(fixture("single_line"))));
}

TEST(Confidence, GeometryConfidenceNearOneFlagged) {
  const Scene s({Trajectory(1, 0, {{0, 0}, {0.2, 0}, {0.4, 0}}, {}, {1, 1, 1}),
                 Trajectory(2, 0, {{0, 3}, {0.2, 3}}, {}, {1, 1})},
                10, 3);
  const auto c = corpus_of(s);
  EXPECT_DOUBLE_EQ(*geo_confidence(c), 1.0);
  const auto r = evaluate_t2v(c);
  EXPECT_TRUE(r.geo_confidence_low());
  EXPECT_EQ(r.diagnostics.count("geo_conf_low"), 1);
}

TEST(Polar, SideBySidePairAtNinetyDegrees) {
  const auto h = nn_polar_histogram(corpus_of(fixture("side_by_side_0p6")));
  ASSERT_EQ(h.angle_bins, 36u);
  EXPECT_EQ(h.samples, 100u);
  EXPECT_NEAR(h.at(27, 1), 0.5, 1e-12);  // +90 deg, 0.5..1.0 m
  EXPECT_NEAR(h.at(9, 1), 0.5, 1e-12);   // -90 deg
}

TEST(Polar, IsotropicNeighboursHaveFlatAngularMarginal) {
  testkit::Rng rng(100);
  std::vector<Scene> scenes;
  for (int i = 0; i < 400; ++i) {
    const double heading = testkit::uniform(rng, -M_PI, M_PI), bearing = testkit::uniform(rng, -M_PI, M_PI);
    const Point2 v{std::cos(heading), std::sin(heading)};
    const Point2 a{testkit::uniform(rng, -5, 5), testkit::uniform(rng, -5, 5)};
    const Point2 b = a + Point2{std::cos(bearing), std::sin(bearing)};
    scenes.emplace_back(std::vector<Trajectory>{walk(1, a, v, 10, 4), walk(2, b, v, 10, 4)}, 10.0, 4);
  }
  const auto h = nn_polar_histogram(analyze(scenes));
  ASSERT_EQ(h.samples, 3200u);
  const auto m = h.angle_marginal();
  ASSERT_EQ(m.size(), 36u);
  // Each scene is one independent bearing seen from both ends, i.e. one draw
  // over the 18 pairs of opposite bins.
  const double expected = 400.0 / 18.0;
  double chi2 = 0.0;
  for (std::size_t b = 0; b < 18; ++b) chi2 += std::pow(400.0 * (m[b] + m[b + 18]) - expected, 2) / expected;
  EXPECT_LT(chi2, 40.79);  // 17 dof, p = 0.001
  EXPECT_NEAR(std::accumulate(m.begin(), m.end(), 0.0), 1.0, 1e-12);
}

TEST(Polar, NoMoversGivesZeroHistogram) {
  const auto h = nn_polar_histogram(corpus_of(fixture("all_stationary")));
  EXPECT_EQ(h.samples, 0u);
  for (double x : h.mass) EXPECT_EQ(x, 0.0);
}

TEST(Quartiles, LinearInterpolation) {
  const auto q = quartiles({4, 1, 3, 2});
  EXPECT_DOUBLE_EQ(q.q1, 1.75);
  EXPECT_DOUBLE_EQ(q.median, 2.5);
  EXPECT_DOUBLE_EQ(q.q3, 3.25);
  EXPECT_THROW(quartiles({}), Error);
}

TEST(FundamentalDiagram, PlantedLawIsRecovered) {
  const auto bins = fundamental_diagram(corpus_of(fixture("planted_fd")));
  std::vector<double> centre, median;
  for (const auto& b : bins) {
    if (!b) continue;
    centre.push_back(0.5 * (b->density_lo + b->density_hi));
    median.push_back(b->speed.median);
    EXPECT_NEAR(b->speed.median, synthgen::planted_speed(centre.back()), 1e-6);
  }
  ASSERT_EQ(centre.size(), 10u);
  for (std::size_t i = 1; i < median.size(); ++i) EXPECT_LT(median[i], median[i - 1]);
  EXPECT_LT(spearman(centre, median), -0.9);
}

TEST(FundamentalDiagram, ConstantSpeedIsFlat) {
  for (const auto& b : fundamental_diagram(corpus_of(fixture("lattice_0p75"))))
    if (b) EXPECT_NEAR(b->speed.median, 1.3, 1e-9);
}

TEST(FundamentalDiagram, OutOfRangeDensitiesAbsent) {
  MetricConfig cfg;
  cfg.fd_max_density = 0.2;
  Diagnostics diag;
  const auto bins = fundamental_diagram(corpus_of(fixture("lattice_0p75"), cfg), cfg, &diag);
  for (const auto& b : bins) EXPECT_FALSE(b);
  EXPECT_GT(diag.count("fd_out_of_range"), 0);
}

TEST(FundamentalDiagram, CsvSkipsEmptyBins) {
  const auto csv = fundamental_diagram_csv(fundamental_diagram(corpus_of(fixture("planted_fd"))));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
  EXPECT_EQ(csv.rfind("bin,density_lo,density_hi,count,speed_median", 0), 0u);
}

TEST(LevelOfService, Grades) {
  EXPECT_EQ(to_char(classify_los(0.5)), 'A');
  EXPECT_EQ(to_char(classify_los(2.0)), 'D');
  EXPECT_EQ(to_char(classify_los(5.38)), 'F');
  const double edges[] = {0.83, 1.08, 1.79, 3.59, 5.38};
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(to_char(classify_los(std::nextafter(edges[i], 0.0))), 'A' + i);
    EXPECT_EQ(to_char(classify_los(edges[i])), 'A' + i + 1);
  }
  EXPECT_THROW(classify_los(-0.1), Error);
  EXPECT_THROW(classify_los(std::nan("")), Error);
}

TEST(Report, IdentityUnderIdPermutation) {
  testkit::Rng rng(8);
  for (int rep = 0; rep < 10; ++rep) {
    const Scene s = testkit::random_scene(rng);
    const auto r = evaluate_i2v(corpus_of(testkit::permute_ids(rng, s)), corpus_of(s));
    for (const auto& [name, value] : r.values) {
      if (name == "mot_conf") continue;
      EXPECT_NEAR(value, name == "path_diversity" ? 1.0 : 0.0, 1e-9) << name;
    }
  }
}

TEST(Report, RigidMotionInvariance) {
  testkit::Rng rng(19);
  for (int rep = 0; rep < 10; ++rep) {
    const Scene s = testkit::random_scene(rng);
    const Scene moved = testkit::transform_scene(s, testkit::uniform(rng, -M_PI, M_PI), {12.5, -3.0});
    const auto a = evaluate_t2v(corpus_of(s)), b = evaluate_t2v(corpus_of(moved));
    ASSERT_EQ(a.absent, b.absent);
    for (const auto& [name, value] : a.values) {
      if (name == "flow") continue;
      EXPECT_NEAR(value, *b.value(name), 1e-6 * std::max(1.0, std::abs(value))) << name;
    }
  }
}

TEST(Report, BoundsHold) {
  testkit::Rng rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const auto gen = corpus_of(testkit::random_scene(rng)), gt = corpus_of(testkit::random_scene(rng));
    const auto t = evaluate_t2v(gen);
    EXPECT_GE(*t.value("collision"), 0.0);
    EXPECT_LE(*t.value("collision"), 100.0);
    EXPECT_GE(*t.value("stationary"), 0.0);
    EXPECT_LE(*t.value("stationary"), 1.0);
    const auto i = evaluate_i2v(gen, gt);
    EXPECT_GT(*i.value("path_diversity"), 0.0);
    EXPECT_LE(*i.value("path_diversity"), 1.0);
    for (const auto& [name, value] : i.values) EXPECT_TRUE(std::isfinite(value)) << name;
  }
}

TEST(Report, KeysAndAbsence) {
  const auto c = corpus_of(fixture("single_line"));
  const auto t = evaluate_t2v(c);
  EXPECT_FALSE(t.has("internal_diversity"));
  EXPECT_FALSE(t.has("mot_conf"));
  EXPECT_TRUE(t.has("velocity"));
  EXPECT_NE(std::find(t.absent.begin(), t.absent.end(), "internal_diversity"), t.absent.end());
  const auto i = evaluate_i2v(c, c);
  EXPECT_TRUE(i.has("path_error"));
  EXPECT_FALSE(i.has("geo_conf"));
  EXPECT_FALSE(i.has("internal_diversity"));
}

TEST(Report, JsonIsDeterministicAndEchoesConfig) {
  const auto c = corpus_of(fixture("lattice_0p75"));
  const auto a = to_json(evaluate_t2v(c, {}, 5)), b = to_json(evaluate_t2v(c, {}, 5));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"collision_threshold_m\": 0.1"), std::string::npos);
  EXPECT_NE(a.find("\"seed\": 5"), std::string::npos);
  EXPECT_NE(a.find("\"mode\": \"T2V\""), std::string::npos);
}

TEST(Analysis, ParallelMatchesSequential) {
  testkit::Rng rng(4);
  std::vector<Scene> scenes;
  for (int i = 0; i < 12; ++i) scenes.push_back(testkit::random_scene(rng));
  const auto pooled = analyze(scenes);
  ASSERT_EQ(pooled.size(), scenes.size());
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const auto one = analyze(scenes[i]);
    EXPECT_EQ(pooled[i].scene, one.scene);
    for (std::size_t j = 0; j < one.summaries.size(); ++j)
      EXPECT_EQ(pooled[i].summaries[j].mean_speed, one.summaries[j].mean_speed);
  }
}

TEST(DefaultThresholds, MatchProtocol) {
  const MetricConfig cfg;
  EXPECT_EQ(cfg.collision_threshold_m, 0.1);
  EXPECT_EQ(cfg.stationary_threshold_m, 0.2);
  EXPECT_EQ(cfg.moving_speed_threshold, 0.1);
  EXPECT_EQ(cfg.density_neighbors, 4u);
  EXPECT_EQ(cfg.nn_radius_m, 10.0);
}
