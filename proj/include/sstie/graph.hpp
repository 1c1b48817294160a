#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sstie/error.hpp"

namespace sstie {

using NodeId = std::uint64_t;
using Label = std::string;

inline const Label kDefaultLabel = "default";

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// One stored interaction record; endpoints are canonicalized so that a < b.
struct LabeledEdge {
  NodeId a = 0;
  NodeId b = 0;
  Label label;
  double weight = 0.0;

  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

/// Undirected weighted multi-label graph.
///
/// Nodes are addressed publicly by NodeId and internally by a dense index
/// assigned in ascending NodeId order, so iterating indices visits nodes in
/// ascending id order. Adjacency lists hold the unlabeled projection: one
/// entry per neighbor with weights summed over every label on that pair,
/// sorted by neighbor index. Immutable once built; see GraphBuilder.
class SocialGraph {
 public:
  struct Neighbor {
    std::size_t index = 0;
    double weight = 0.0;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
  };

  SocialGraph() = default;

  std::size_t node_count() const noexcept { return ids_.size(); }
  // Number of distinct adjacent pairs (labels collapsed).
  std::size_t edge_count() const noexcept { return pair_count_; }
  std::size_t labeled_edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  std::span<const NodeId> nodes() const noexcept { return ids_; }
  NodeId id(std::size_t index) const { return ids_.at(index); }

  std::optional<std::size_t> find(NodeId node) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), node);
    if (it == ids_.end() || *it != node) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
  }

  bool contains(NodeId node) const { return find(node).has_value(); }

  std::size_t index_of(NodeId node) const {
    auto idx = find(node);
    if (!idx) throw NotFound("node " + std::to_string(node) + " not in graph");
    return *idx;
  }

  std::span<const Neighbor> neighbors(std::size_t index) const { return adj_.at(index); }
  std::size_t degree(std::size_t index) const { return adj_.at(index).size(); }

  // Weight of the pair summed over labels, or nullopt if not adjacent.
  std::optional<double> weight(NodeId a, NodeId b) const {
    auto ia = find(a);
    auto ib = find(b);
    if (!ia || !ib) return std::nullopt;
    const auto& row = adj_[*ia];
    auto it = std::lower_bound(row.begin(), row.end(), *ib,
                               [](const Neighbor& n, std::size_t v) { return n.index < v; });
    if (it == row.end() || it->index != *ib) return std::nullopt;
    return it->weight;
  }

  // Weight of one label on the pair; 0 when the pair has no such edge.
  double weight(NodeId a, NodeId b, const Label& label) const {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::tie(a, b, label),
                               [](const LabeledEdge& e, const auto& key) {
                                 return std::tie(e.a, e.b, e.label) < key;
                               });
    if (it == edges_.end() || it->a != a || it->b != b || it->label != label) return 0.0;
    return it->weight;
  }

  // Sorted by (a, b, label).
  const std::vector<LabeledEdge>& labeled_edges() const noexcept { return edges_; }
  const std::set<Label>& labels() const noexcept { return labels_; }
  const std::map<NodeId, std::string>& aliases() const noexcept { return aliases_; }

  // Extremes of the per-pair (label-summed) weights. Requires edge_count() > 0.
  std::pair<double, double> weight_range() const {
    if (pair_count_ == 0) throw InvalidArgument("graph has no edges");
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& row : adj_)
      for (const auto& n : row) {
        lo = std::min(lo, n.weight);
        hi = std::max(hi, n.weight);
      }
    return {lo, hi};
  }

  friend bool operator==(const SocialGraph& x, const SocialGraph& y) {
    return x.ids_ == y.ids_ && x.edges_ == y.edges_;
  }

 private:
  friend class GraphBuilder;

  std::vector<NodeId> ids_;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<LabeledEdge> edges_;
  std::set<Label> labels_;
  std::map<NodeId, std::string> aliases_;
  std::size_t pair_count_ = 0;
};

/// Accumulates nodes and labeled edges, then freezes them into a SocialGraph.
/// Repeated (pair, label) additions sum their weights.
class GraphBuilder {
 public:
  GraphBuilder& add_node(NodeId node) {
    nodes_.insert(node);
    return *this;
  }

  GraphBuilder& add_edge(NodeId a, NodeId b, double weight, const Label& label = kDefaultLabel) {
    if (a == b) throw InvalidArgument("self-loop on node " + std::to_string(a));
    if (!(weight > 0.0) || !std::isfinite(weight))
      throw InvalidArgument("edge weight must be positive and finite");
    if (label.empty()) throw InvalidArgument("empty edge label");
    if (a > b) std::swap(a, b);
    nodes_.insert(a);
    nodes_.insert(b);
    edges_[{a, b, label}] += weight;
    return *this;
  }

  GraphBuilder& set_alias(NodeId node, std::string alias) {
    aliases_[node] = std::move(alias);
    return *this;
  }

  SocialGraph build() const {
    SocialGraph g;
    g.ids_.assign(nodes_.begin(), nodes_.end());
    g.adj_.resize(g.ids_.size());
    g.labels_.insert(kDefaultLabel);
    std::map<std::pair<std::size_t, std::size_t>, double> pairs;
    for (const auto& [key, w] : edges_) {
      const auto& [a, b, label] = key;
      g.edges_.push_back({a, b, label, w});
      g.labels_.insert(label);
      pairs[{*g.find(a), *g.find(b)}] += w;
    }
    for (const auto& [p, w] : pairs) {
      g.adj_[p.first].push_back({p.second, w});
      g.adj_[p.second].push_back({p.first, w});
    }
    for (auto& row : g.adj_)
      std::sort(row.begin(), row.end(),
                [](const auto& x, const auto& y) { return x.index < y.index; });
    g.pair_count_ = pairs.size();
    for (const auto& [node, alias] : aliases_)
      if (nodes_.count(node)) g.aliases_[node] = alias;
    return g;
  }

 private:
  std::set<NodeId> nodes_;
  std::map<std::tuple<NodeId, NodeId, Label>, double> edges_;
  std::map<NodeId, std::string> aliases_;
};

// Same node set, only edges carrying `label`.
inline SocialGraph label_subgraph(const SocialGraph& g, const Label& label) {
  if (!g.labels().count(label)) throw NotFound("unknown label '" + label + "'");
  GraphBuilder b;
  for (NodeId v : g.nodes()) b.add_node(v);
  for (const auto& e : g.labeled_edges())
    if (e.label == label) b.add_edge(e.a, e.b, e.weight, e.label);
  return b.build();
}

// Copy of g with every labeled edge between a and b removed.
inline SocialGraph without_pair(const SocialGraph& g, NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  GraphBuilder builder;
  for (NodeId v : g.nodes()) builder.add_node(v);
  for (const auto& e : g.labeled_edges())
    if (!(e.a == a && e.b == b)) builder.add_edge(e.a, e.b, e.weight, e.label);
  for (const auto& [node, alias] : g.aliases()) builder.set_alias(node, alias);
  return builder.build();
}

// Unweighted hop distances from `source` (dense index); kUnreachable where no path.
// Exploration stops after `max_depth` layers.
inline std::vector<std::size_t> bfs_distances(const SocialGraph& g, std::size_t source,
                                              std::size_t max_depth = kUnreachable) {
  std::vector<std::size_t> dist(g.node_count(), kUnreachable);
  std::queue<std::size_t> frontier;
  dist.at(source) = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    std::size_t u = frontier.front();
    frontier.pop();
    if (dist[u] >= max_depth) continue;
    for (const auto& nb : g.neighbors(u)) {
      if (dist[nb.index] != kUnreachable) continue;
      dist[nb.index] = dist[u] + 1;
      frontier.push(nb.index);
    }
  }
  return dist;
}

// Nodes at exact hop distance n from `node`, ascending.
inline std::vector<NodeId> hop_ring(const SocialGraph& g, NodeId node, std::size_t n) {
  auto dist = bfs_distances(g, g.index_of(node), n);
  std::vector<NodeId> ring;
  for (std::size_t v = 0; v < dist.size(); ++v)
    if (dist[v] == n) ring.push_back(g.id(v));
  return ring;
}

}  // namespace sstie
