#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "warpact/generators.hpp"
#include "warpact/netstats.hpp"

using namespace warpact;

namespace {

StaticGraph make(std::size_t n, std::vector<Edge> e) { return StaticGraph(n, e); }
StaticGraph triangle() { return make(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }
StaticGraph path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1});
  return make(n, e);
}
StaticGraph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.push_back({i, static_cast<NodeId>((i + 1) % n), 1});
  return make(n, e);
}
StaticGraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.push_back({i, j, 1});
  return make(n, e);
}
StaticGraph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId i = 1; i <= leaves; ++i) e.push_back({0, i, 1});
  return make(leaves + 1, e);
}

}  // namespace

TEST(Clustering, NodeExamples) {
  EXPECT_DOUBLE_EQ(clustering_coefficient(triangle(), 0), 1.0);
  EXPECT_DOUBLE_EQ(clustering_coefficient(star(3), 0), 0.0);
  EXPECT_DOUBLE_EQ(clustering_coefficient(complete(4), 2), 1.0);
  EXPECT_DOUBLE_EQ(clustering_coefficient(cycle(4), 1), 0.0);
}

TEST(Clustering, MeanExamples) {
  EXPECT_DOUBLE_EQ(mean_clustering(complete(6)), 1.0);
  EXPECT_DOUBLE_EQ(mean_clustering(path(7)), 0.0);
}

TEST(Clustering, ByDegree) {
  auto c = clustering_by_degree(triangle());
  ASSERT_EQ(c.size(), 1u);
  EXPECT_DOUBLE_EQ(c[2], 1.0);
  c = clustering_by_degree(star(3));
  EXPECT_EQ(c.size(), 2u);
  EXPECT_DOUBLE_EQ(c[1], 0.0);
  EXPECT_DOUBLE_EQ(c[3], 0.0);
  // two triangles sharing node 0
  c = clustering_by_degree(make(5, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {0, 3, 1}, {3, 4, 1}, {0, 4, 1}}));
  EXPECT_DOUBLE_EQ(c[2], 1.0);
  // shared vertex: k = 4, t = 2, C = 2t / (k(k-1)) = 1/3
  EXPECT_NEAR(c[4], 1.0 / 3.0, 1e-15);
}

TEST(Clustering, MatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    const auto g = oracle::random_graph(2 + rng() % 25, 0.3, rng);
    const auto a = oracle::adjacency(g);
    const auto c = clustering_coefficients(g);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      EXPECT_NEAR(c[u], oracle::clustering(a, u), 1e-12);
      EXPECT_NEAR(clustering_coefficient(g, u), oracle::clustering(a, u), 1e-12);
    }
  }
}

TEST(Distances, PathOfThree) {
  const auto s = distance_statistics(path(3));
  EXPECT_NEAR(s.mean, 4.0 / 3.0, 1e-15);
  EXPECT_EQ(s.diameter, 2u);
  EXPECT_NEAR(s.distribution.at(1), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(s.distribution.at(2), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(s.unreachable_fraction, 0.0);
}

TEST(Distances, CompleteGraph) {
  const auto s = distance_statistics(complete(7));
  EXPECT_DOUBLE_EQ(s.mean, 1.0);
  EXPECT_EQ(s.diameter, 1u);
}

TEST(Distances, DisconnectedReportsUnreachableFraction) {
  const auto s = distance_statistics(make(4, {{0, 1, 1}, {2, 3, 1}}));
  EXPECT_DOUBLE_EQ(s.mean, 1.0);
  EXPECT_NEAR(s.unreachable_fraction, 4.0 / 6.0, 1e-15);
}

TEST(Distances, MatchesBruteForceWithThreads) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 100; ++t) {
    const auto g = oracle::random_graph(2 + rng() % 30, 0.12, rng);
    const auto want = oracle::distance_summary(oracle::floyd_warshall(oracle::adjacency(g)));
    for (unsigned threads : {1u, 4u}) {
      const auto got = distance_statistics(DistanceProfile::compute(g, threads));
      EXPECT_NEAR(got.mean, want.mean, 1e-12);
      EXPECT_EQ(static_cast<int>(got.diameter), want.diameter);
      EXPECT_NEAR(got.unreachable_fraction, want.unreachable_fraction, 1e-12);
      ASSERT_EQ(got.distribution.size(), want.distribution.size());
      for (auto [d, p] : want.distribution) EXPECT_NEAR(got.distribution.at(d), p, 1e-12);
    }
  }
}

TEST(Assortativity, PathOfThreeIsMinusOne) { EXPECT_NEAR(assortativity(path(3)), -1.0, 1e-15); }

TEST(Assortativity, RegularGraphUndefined) {
  EXPECT_THROW(assortativity(cycle(6)), UndefinedCorrelationError);
  EXPECT_THROW(assortativity(StaticGraph(3, {})), UndefinedCorrelationError);
}

TEST(Assortativity, MatchesBruteForceIncludingMultiplicity) {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    auto g = oracle::random_graph(4 + rng() % 20, 0.25, rng);
    auto edges = g.edges();
    for (auto& e : edges) e.multiplicity = 1 + rng() % 3;
    const StaticGraph multi(g.node_count(), edges);
    for (const StaticGraph* h : std::initializer_list<const StaticGraph*>{&g, &multi}) {
      double want;
      try {
        want = oracle::assortativity(oracle::adjacency(*h));
      } catch (...) {
        continue;
      }
      if (!std::isfinite(want)) {
        EXPECT_THROW(assortativity(*h), UndefinedCorrelationError);
        continue;
      }
      EXPECT_NEAR(assortativity(*h), want, 1e-10);
      ++checked;
    }
  }
  EXPECT_GT(checked, 300);
}

TEST(Lcc, Examples) {
  EXPECT_DOUBLE_EQ(lcc_fraction(cycle(5)), 1.0);
  EXPECT_NEAR(lcc_fraction(StaticGraph::from(perfect_matching(7))), 1.0 / 7.0, 1e-15);
}

TEST(DegreeDistribution, CountsMultiplicityOnRequest) {
  const StaticGraph g = make(3, {{0, 1, 2}, {1, 2, 1}});
  const auto with = degree_distribution(g, true);
  const auto without = degree_distribution(g, false);
  EXPECT_NEAR(with.probability(2), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(with.probability(3), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(without.probability(1), 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(with.probability(9), 0.0);
}

TEST(Stats, SingleEdgeGraph) {
  StatsOptions opt;
  opt.modularity_runs = 3;
  const auto r = compute_stats(make(2, {{0, 1, 1}}), opt);
  EXPECT_EQ(r.n, 2u);
  EXPECT_EQ(r.m, 1u);
  EXPECT_DOUBLE_EQ(r.mean_distance, 1.0);
  EXPECT_EQ(r.diameter, 1u);
  EXPECT_DOUBLE_EQ(r.mean_clustering, 0.0);
  EXPECT_DOUBLE_EQ(r.lcc, 1.0);
  EXPECT_FALSE(r.assortativity.has_value());
}

TEST(Stats, SimpleDegreesOption) {
  StatsOptions opt;
  opt.modularity_runs = 0;
  const StaticGraph g = make(3, {{0, 1, 2}, {1, 2, 1}});
  EXPECT_EQ(compute_stats(g, opt).m, 3u);
  opt.simple_degrees = true;
  EXPECT_EQ(compute_stats(g, opt).m, 2u);
}

TEST(Stats, DisconnectedInput) {
  StatsOptions opt;
  opt.modularity_runs = 2;
  const auto r = compute_stats(make(5, {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}}), opt);
  EXPECT_LT(r.lcc, 1.0);
  EXPECT_GT(r.unreachable_fraction, 0.0);
}
