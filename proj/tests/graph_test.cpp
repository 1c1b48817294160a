#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sstie/graph.hpp"
#include "sstie/io.hpp"

using namespace sstie;

namespace {

SocialGraph parse(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

}  // namespace

TEST(LoadGraph, DuplicateRowsSumIntoOneUndirectedEdge) {
  auto g = parse("src,dst,weight\n1,2,3.0\n2,1,2.0\n");
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(*g.weight(1, 2), 5.0);
  EXPECT_DOUBLE_EQ(*g.weight(2, 1), 5.0);
}

TEST(LoadGraph, LabelsAreStoredAsParallelEdges) {
  auto g = parse("src,dst,weight,label\n1,2,1.0,\"work\"\n1,2,1.0,sport\n");
  EXPECT_EQ(g.labeled_edge_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(*g.weight(1, 2), 2.0);
  EXPECT_DOUBLE_EQ(g.weight(1, 2, "work"), 1.0);
  EXPECT_DOUBLE_EQ(g.weight(2, 1, "sport"), 1.0);
  EXPECT_DOUBLE_EQ(g.weight(1, 2, "school"), 0.0);
  EXPECT_TRUE(g.labels().count("work"));
}

TEST(LoadGraph, CommentsAndBlankLinesAreSkipped) {
  auto g = parse("# interaction log\n\nsrc,dst,weight\n# one row\n4,9,2\n");
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.contains(4));
  EXPECT_TRUE(g.contains(9));
}

TEST(LoadGraph, SelfLoopIsRejectedWithRowNumber) {
  try {
    parse("src,dst,weight\n1,2,1\n1,1,2.0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
    EXPECT_NE(std::string(e.what()).find("self-loop"), std::string::npos);
  }
}

TEST(LoadGraph, MalformedRowsReportTheirIndex) {
  EXPECT_THROW(parse("src,dst,weight\n1,2\n"), ParseError);
  EXPECT_THROW(parse("src,dst,weight\n1,x,2\n"), ParseError);
  EXPECT_THROW(parse("src,dst,weight\n1,2,abc\n"), ParseError);
  EXPECT_THROW(parse("a,b,c\n1,2,3\n"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
  try {
    parse("src,dst,weight\n1,2,1\n2,3,0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
  }
  EXPECT_THROW(parse("src,dst,weight\n1,2,-4\n"), ParseError);
}

TEST(LoadGraph, IsolatedNodeRows) {
  auto g = parse("src,dst,weight\n1,2,1\n7,,\n");
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.degree(g.index_of(7)), 0u);
}

TEST(LoadGraph, MissingFileThrows) {
  EXPECT_THROW(load_graph("/nonexistent/graph.csv"), Error);
}

TEST(GraphBuilder, RejectsInvalidEdges) {
  GraphBuilder b;
  EXPECT_THROW(b.add_edge(1, 1, 1.0), InvalidArgument);
  EXPECT_THROW(b.add_edge(1, 2, 0.0), InvalidArgument);
  EXPECT_THROW(b.add_edge(1, 2, -1.0), InvalidArgument);
}

TEST(GraphBuilder, AdjacencyIsSortedAndSymmetric) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    auto g = oracle::random_connected(rng, 10, 0.3, 20, true);
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      auto row = g.neighbors(u);
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (k) {
          EXPECT_LT(row[k - 1].index, row[k].index);
        }
        EXPECT_NE(row[k].index, u);
        EXPECT_GT(row[k].weight, 0.0);
        EXPECT_EQ(g.weight(g.id(row[k].index), g.id(u)), row[k].weight);
      }
    }
  }
}

TEST(GraphIo, RoundTripPreservesGraphExactly) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> w(0.001, 1000.0);
  for (int t = 0; t < 25; ++t) {
    GraphBuilder b;
    auto base = oracle::random_connected(rng, 12, 0.2, 30, true);
    for (const auto& e : base.labeled_edges()) b.add_edge(e.a, e.b, w(rng), e.label);
    b.add_node(100 + t);
    auto g = b.build();
    std::stringstream buf;
    write_graph(buf, g);
    auto back = read_graph(buf);
    EXPECT_EQ(back, g);
  }
}

TEST(GraphOps, LabelSubgraphKeepsNodesAndOneLabel) {
  GraphBuilder b;
  b.add_edge(1, 2, 2, "work").add_edge(1, 3, 5, "sport").add_edge(2, 3, 1, "work");
  auto g = b.build();
  auto work = label_subgraph(g, "work");
  EXPECT_EQ(work.node_count(), 3u);
  EXPECT_EQ(work.edge_count(), 2u);
  EXPECT_FALSE(work.weight(1, 3).has_value());
  EXPECT_THROW(label_subgraph(g, "school"), NotFound);
}

TEST(GraphOps, WithoutPairDropsEveryLabel) {
  GraphBuilder b;
  b.add_edge(1, 2, 2, "work").add_edge(1, 2, 5, "sport").add_edge(2, 3, 1);
  auto g = without_pair(b.build(), 2, 1);
  EXPECT_FALSE(g.weight(1, 2).has_value());
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(GraphOps, HopRingOnPath) {
  GraphBuilder b;
  b.add_edge(1, 2, 1).add_edge(2, 3, 1).add_edge(3, 4, 1).add_node(9);
  auto g = b.build();
  EXPECT_EQ(hop_ring(g, 1, 2), (std::vector<NodeId>{3}));
  EXPECT_EQ(hop_ring(g, 2, 1), (std::vector<NodeId>{1, 3}));
  EXPECT_TRUE(hop_ring(g, 9, 1).empty());
  EXPECT_THROW(hop_ring(g, 42, 1), NotFound);
}
