#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sstie/export.hpp"
#include "sstie/generate.hpp"
#include "sstie/validation.hpp"

using namespace sstie;

namespace {

SocialGraph cycle(std::size_t len, double w = 1.0) {
  GraphBuilder b;
  for (NodeId v = 0; v < len; ++v) b.add_edge(v, (v + 1) % len, w);
  return b.build();
}

// Ring plus random chords: every edge lies on a cycle, so no triad pair
// becomes disconnected.
SocialGraph ring_with_chords(std::mt19937_64& rng, std::size_t nodes, double p) {
  GraphBuilder b;
  std::uniform_int_distribution<int> w(1, 30);
  std::bernoulli_distribution chord(p);
  for (NodeId v = 0; v < nodes; ++v) b.add_edge(v, (v + 1) % nodes, w(rng));
  for (NodeId a = 0; a < nodes; ++a)
    for (NodeId c = a + 2; c < nodes; ++c)
      if (chord(rng)) b.add_edge(a, c, w(rng));
  return b.build();
}

// Graph without the a-b pair, rebuilt from the raw edge list.
SocialGraph drop_pair(const SocialGraph& g, NodeId a, NodeId b) {
  GraphBuilder out;
  for (NodeId v : g.nodes()) out.add_node(v);
  for (const auto& e : g.labeled_edges())
    if (!(e.a == a && e.b == b)) out.add_edge(e.a, e.b, e.weight, e.label);
  return out.build();
}

}  // namespace

TEST(Jaccard, IdenticalNeighborhoods) {
  GraphBuilder b;  // 1 and 2 share {10, 11, 12} and are not adjacent
  for (NodeId m : {10, 11, 12}) b.add_edge(1, m, 1).add_edge(2, m, 1);
  EXPECT_DOUBLE_EQ(jaccard(b.build(), 1, 2), 1.0);
}

TEST(Jaccard, DistanceThreeIsZero) {
  GraphBuilder b;
  b.add_edge(1, 2, 1).add_edge(2, 3, 1).add_edge(3, 4, 1);
  EXPECT_EQ(jaccard(b.build(), 1, 4), 0.0);
}

TEST(Jaccard, TwoOfFive) {
  GraphBuilder b;  // N(10) = {1,2,3}, N(11) = {1,2,4,5}
  for (NodeId m : {1, 2, 3}) b.add_edge(10, m, 1);
  for (NodeId m : {1, 2, 4, 5}) b.add_edge(11, m, 1);
  EXPECT_DOUBLE_EQ(jaccard(b.build(), 10, 11), 0.4);
}

TEST(Jaccard, Errors) {
  GraphBuilder b;
  b.add_edge(1, 2, 1);
  auto g = b.build();
  EXPECT_THROW(jaccard(g, 1, 7), NotFound);
  EXPECT_THROW(jaccard(g, 1, 1), InvalidArgument);
}

TEST(Jaccard, SymmetricBoundedAndMatchesSetDefinition) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    auto g = oracle::random_connected(rng, 12, 0.2, 10, true);
    auto nb = oracle::neighbor_sets(g);
    for (NodeId s : g.nodes())
      for (NodeId r : g.nodes()) {
        if (s == r) continue;
        const double jc = jaccard(g, s, r);
        EXPECT_EQ(jc, jaccard(g, r, s));
        EXPECT_GE(jc, 0.0);
        EXPECT_LE(jc, 1.0);
        EXPECT_NEAR(jc, oracle::jaccard(g, s, r), 1e-15);
        bool common = false;
        for (NodeId m : nb[s]) common = common || nb[r].count(m);
        EXPECT_EQ(jc == 0.0, !common);
      }
  }
}

TEST(Pearson, PerfectLines) {
  std::vector<double> x{1, 2, 5, 9}, up, down;
  for (double v : x) up.push_back(2 * v + 1), down.push_back(-v);
  EXPECT_NEAR(pearson(x, up), 1.0, 1e-15);
  EXPECT_NEAR(pearson(x, down), -1.0, 1e-15);
  EXPECT_NEAR(pearson(std::vector<double>{0, 1}, std::vector<double>{3, 5}), 1.0, 1e-15);
}

TEST(Pearson, HandExample) {
  // centered: sxy = 3, sxx = syy = 5
  std::vector<double> x{1, 2, 3, 4}, y{2, 1, 4, 3};
  EXPECT_NEAR(pearson(x, y), 0.6, 1e-15);
  EXPECT_NEAR(oracle::pearson(x, y), 0.6, 1e-15);
}

TEST(Pearson, Errors) {
  std::vector<double> a{1, 2, 3}, flat{4, 4, 4}, one{1};
  EXPECT_THROW(pearson(a, flat), ZeroVariance);
  EXPECT_THROW(pearson(flat, a), ZeroVariance);
  EXPECT_THROW(pearson(one, one), InvalidArgument);
  EXPECT_THROW(pearson(a, std::vector<double>{1, 2}), InvalidArgument);
  EXPECT_THROW(pearson(a, std::vector<double>{1, std::nan(""), 2}), InvalidArgument);
}

TEST(Pearson, AffineInvarianceAndOracle) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> scale(0.01, 100.0), shift(-1000.0, 1000.0);
  std::uniform_int_distribution<int> len(2, 60);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> x(len(rng)), y(x.size()), xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = z(rng), y[i] = 0.5 * x[i] + z(rng);
    const double r = pearson(x, y);
    EXPECT_LE(std::abs(r), 1.0);
    EXPECT_NEAR(r, oracle::pearson(x, y), 1e-9);
    const double a = scale(rng), b = shift(rng), c = scale(rng), d = shift(rng);
    for (double v : x) xs.push_back(a * v + b);
    for (double v : y) ys.push_back(c * v + d);
    EXPECT_NEAR(pearson(xs, ys), r, 1e-9);
  }
}

TEST(CorrelateJcSs2, ConstantColumnsAreSignaled) {
  // on a 6-cycle every distance-2 pair has one path of equal strength
  EXPECT_THROW(correlate_jc_ss2(cycle(6)), ZeroVariance);
}

TEST(CorrelateJcSs2, NeedsTwoPairs) {
  GraphBuilder b;
  b.add_edge(1, 2, 1).add_edge(2, 3, 1);
  EXPECT_THROW(correlate_jc_ss2(b.build()), InvalidArgument);
}

TEST(CorrelateJcSs2, SeriesCoversDistanceTwoPairs) {
  std::mt19937_64 rng(7);
  auto g = oracle::random_connected(rng, 11, 0.15);
  auto series = jc_ss2_series(g, normalized_weights(g));
  std::size_t expected = 0;
  for (const auto& [key, d] : oracle::all_distances(g))
    if (d == 2 && key.first < key.second) ++expected;
  ASSERT_EQ(series.size(), expected);
  for (std::size_t i = 0; i < series.size(); ++i) {
    auto [s, r] = series.keys[i];
    EXPECT_LT(s, r);
    EXPECT_NEAR(series.x[i], oracle::jaccard(g, s, r), 1e-15);
    EXPECT_NEAR(series.y[i], oracle::strength(g, s, r), 1e-12);
  }
}

TEST(CorrelateJcSs2, ReproducibleAndMatchesExportedSeries) {
  GeneratorParams p;
  p.model = GraphModel::barabasi_albert;
  p.nodes = 60;
  p.m = 2;
  auto g = generate_graph(p, 2024);
  auto first = correlate_jc_ss2(g);
  auto second = correlate_jc_ss2(generate_graph(p, 2024));
  EXPECT_EQ(first.coefficient, second.coefficient);
  EXPECT_EQ(first.n_pairs, second.n_pairs);

  std::stringstream csv;
  write_series_csv(csv, jc_ss2_series(g, normalized_weights(g)));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "a,b,jc,ss2");
  std::vector<double> x, y;
  while (std::getline(csv, line)) {
    std::stringstream row(line);
    std::string f[4];
    for (auto& s : f) std::getline(row, s, ',');
    x.push_back(std::stod(f[2]));
    y.push_back(std::stod(f[3]));
  }
  EXPECT_EQ(x.size(), first.n_pairs);
  EXPECT_NEAR(oracle::pearson(x, y), first.coefficient, 1e-12);
}

TEST(Triad, SymmetricTriangleHasNoVariance) {
  GraphBuilder b;
  b.add_edge(1, 2, 4).add_edge(2, 3, 4).add_edge(1, 3, 4);
  auto recs = triad_records(b.build());
  ASSERT_EQ(recs.size(), 3u);
  for (const auto& r : recs) {
    EXPECT_EQ(r.n, 2u);
    EXPECT_DOUBLE_EQ(r.ss, 0.25);  // 1 / 2 over the single surviving 2-path
  }
  EXPECT_THROW(triad_correlations(recs, ZeroPolicy::include_zeros), ZeroVariance);
}

TEST(Triad, BridgeContributesZero) {
  GraphBuilder b;  // triangle 1-2-3 with a pendant 3-4
  b.add_edge(1, 2, 1).add_edge(2, 3, 2).add_edge(1, 3, 3).add_edge(3, 4, 4);
  auto g = b.build();
  auto recs = triad_records(g);
  ASSERT_EQ(recs.size(), 4u);
  const auto& bridge = recs.back();
  EXPECT_EQ(bridge.a, 3u);
  EXPECT_EQ(bridge.b, 4u);
  EXPECT_EQ(bridge.ss, 0.0);
  EXPECT_EQ(bridge.n, 0u);
  EXPECT_DOUBLE_EQ(bridge.jc, 0.0);

  auto inc = triad_correlations(recs, ZeroPolicy::include_zeros);
  auto drop = triad_correlations(recs, ZeroPolicy::drop_zeros);
  EXPECT_EQ(inc.reports[0].n_pairs, 4u);
  EXPECT_EQ(drop.reports[0].n_pairs, 3u);
  EXPECT_DOUBLE_EQ(drop.removed_fraction, 0.25);
  EXPECT_EQ(inc.removed_fraction, 0.0);
  EXPECT_TRUE(drop.reports[1].zero_filtered);
  EXPECT_FALSE(inc.reports[1].zero_filtered);
}

TEST(Triad, RecordsMatchOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    auto g = oracle::random_connected(rng, 10, 0.2, 25, t % 2 == 1);
    auto recs = triad_records(g);
    EXPECT_EQ(recs.size(), g.edge_count());
    for (const auto& r : recs) {
      ASSERT_LT(r.a, r.b);
      auto reduced = drop_pair(g, r.a, r.b);
      const auto d = oracle::all_distances(reduced).at({r.a, r.b});
      EXPECT_DOUBLE_EQ(r.weight, oracle::pair_weights(g).at({r.a, r.b}));
      EXPECT_NEAR(r.jc, oracle::jaccard(g, r.a, r.b), 1e-15);
      if (d >= oracle::kInf) {
        EXPECT_EQ(r.ss, 0.0);
        EXPECT_EQ(r.n, 0u);
      } else {
        EXPECT_EQ(r.n, d);
        EXPECT_NEAR(r.ss, oracle::strength(reduced, r.a, r.b), 1e-12);
      }
    }
  }
}

TEST(Triad, PoliciesAgreeWithoutZeros) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 10; ++t) {
    auto g = ring_with_chords(rng, 25, 0.12);
    auto recs = triad_records(g);
    for (const auto& r : recs) ASSERT_GT(r.ss, 0.0);
    auto inc = triad_correlations(recs, ZeroPolicy::include_zeros);
    auto drop = triad_correlations(recs, ZeroPolicy::drop_zeros);
    EXPECT_EQ(drop.removed_fraction, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(inc.reports[i].coefficient, drop.reports[i].coefficient);
      EXPECT_EQ(inc.reports[i].n_pairs, drop.reports[i].n_pairs);
    }
  }
}

TEST(Triad, NeedsTwoEdges) {
  GraphBuilder b;
  b.add_edge(1, 2, 1);
  EXPECT_THROW(triad_records(b.build()), InvalidArgument);
  GraphBuilder star;  // every edge is a bridge, so nothing survives the filter
  star.add_edge(1, 2, 1).add_edge(1, 3, 2).add_edge(1, 4, 3);
  auto recs = triad_records(star.build());
  EXPECT_THROW(triad_correlations(recs, ZeroPolicy::drop_zeros), InvalidArgument);
}

TEST(Triad, TrendOnSeededGraphs) {
  // 80-node scale-free graphs with activity-driven weights, seeds 1..7
  std::size_t ss_beats_jc = 0, all_positive = 0;
  const std::size_t graphs = 7;
  for (std::uint64_t seed = 1; seed <= graphs; ++seed) {
    GeneratorParams p;
    p.model = GraphModel::barabasi_albert;
    p.nodes = 80;
    p.m = 3;
    p.weights.model = WeightModel::activity;
    auto r = triad_experiment(generate_graph(p, seed), ZeroPolicy::include_zeros);
    const double wjc = r.reports[0].coefficient, wss = r.reports[1].coefficient,
                 jcss = r.reports[2].coefficient;
    ss_beats_jc += wss > wjc;
    all_positive += wjc > 0 && wss > 0 && jcss > 0;
  }
  EXPECT_GT(2 * ss_beats_jc, graphs);
  EXPECT_GT(2 * all_positive, graphs);
}
