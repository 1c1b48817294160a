#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "sstie/error.hpp"
#include "sstie/graph.hpp"

namespace sstie {

// Descriptive statistics of the unlabeled projection. Clustering and path
// lengths ignore weights. Path statistics are taken over connected pairs only,
// so a disconnected graph reports the figures of its finite distances.
struct GraphStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double density = 0.0;
  double average_clustering_coefficient = 0.0;
  double degree_assortativity = std::numeric_limits<double>::quiet_NaN();  // NaN if undefined
  std::size_t diameter = 0;
  double average_shortest_path_length = 0.0;
  double min_weight = 0.0;
  double max_weight = 0.0;
  std::size_t components = 0;
};

inline double local_clustering(const SocialGraph& g, std::size_t v) {
  auto nbrs = g.neighbors(v);
  const std::size_t k = nbrs.size();
  if (k < 2) return 0.0;
  std::vector<char> mark(g.node_count(), 0);
  for (const auto& n : nbrs) mark[n.index] = 1;
  std::size_t links = 0;
  for (const auto& n : nbrs)
    for (const auto& m : g.neighbors(n.index))
      if (mark[m.index]) ++links;
  // each triangle edge among neighbors was seen from both ends
  return static_cast<double>(links) / static_cast<double>(k * (k - 1));
}

inline GraphStats graph_stats(const SocialGraph& g) {
  if (g.empty()) throw InvalidArgument("graph_stats on an empty graph");
  GraphStats s;
  const std::size_t V = g.node_count();
  s.node_count = V;
  s.edge_count = g.edge_count();
  if (V >= 2)
    s.density = 2.0 * static_cast<double>(s.edge_count) / (static_cast<double>(V) * (V - 1));
  if (s.edge_count > 0) std::tie(s.min_weight, s.max_weight) = g.weight_range();

  double cc = 0.0;
  for (std::size_t v = 0; v < V; ++v) cc += local_clustering(g, v);
  s.average_clustering_coefficient = cc / static_cast<double>(V);

  // Pearson over (deg u, deg v) for both orientations of every edge.
  double sum_xy = 0.0, sum_x = 0.0, sum_x2 = 0.0, count = 0.0;
  for (std::size_t u = 0; u < V; ++u)
    for (const auto& n : g.neighbors(u)) {
      const double du = static_cast<double>(g.degree(u));
      const double dv = static_cast<double>(g.degree(n.index));
      sum_xy += du * dv;
      sum_x += du;
      sum_x2 += du * du;
      count += 1.0;
    }
  if (count > 0.0) {
    const double mean = sum_x / count;
    const double var = sum_x2 / count - mean * mean;
    if (var > 1e-12 * std::max(1.0, sum_x2 / count))
      s.degree_assortativity = (sum_xy / count - mean * mean) / var;
  }

  std::vector<char> seen(V, 0);
  double total = 0.0, pairs = 0.0;
  for (std::size_t u = 0; u < V; ++u) {
    if (!seen[u]) ++s.components;
    auto dist = bfs_distances(g, u);
    for (std::size_t v = 0; v < V; ++v) {
      if (dist[v] == kUnreachable) continue;
      seen[v] = 1;
      if (v == u) continue;
      s.diameter = std::max(s.diameter, dist[v]);
      total += static_cast<double>(dist[v]);
      pairs += 1.0;
    }
  }
  if (pairs > 0.0) s.average_shortest_path_length = total / pairs;
  return s;
}

}  // namespace sstie
