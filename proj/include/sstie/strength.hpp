#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "sstie/error.hpp"
#include "sstie/graph.hpp"

namespace sstie {

inline constexpr std::size_t kDefaultPathCap = 10000;

/// Directed, per-user normalized interaction weights.
///
/// Row i holds, for every neighbor j of i, the label-summed weight of the pair
/// divided by i's total label-summed weight, so each non-isolated row sums to
/// one. The value read from i toward j generally differs from j toward i.
/// Rows are indexed by the dense node index of the graph they were built from.
class NormalizedWeights {
 public:
  struct Entry {
    std::size_t index = 0;
    double value = 0.0;
  };

  NormalizedWeights() = default;
  NormalizedWeights(std::vector<NodeId> ids, std::vector<std::vector<Entry>> rows)
      : ids_(std::move(ids)), rows_(std::move(rows)) {}

  std::size_t node_count() const noexcept { return ids_.size(); }
  NodeId id(std::size_t index) const { return ids_.at(index); }
  std::span<const NodeId> nodes() const noexcept { return ids_; }
  std::span<const Entry> row(std::size_t index) const { return rows_.at(index); }

  std::optional<double> at_index(std::size_t from, std::size_t to) const {
    const auto& r = rows_.at(from);
    auto it = std::lower_bound(r.begin(), r.end(), to,
                               [](const Entry& e, std::size_t v) { return e.index < v; });
    if (it == r.end() || it->index != to) return std::nullopt;
    return it->value;
  }

  std::optional<double> at(NodeId from, NodeId to) const {
    auto a = index(from);
    auto b = index(to);
    if (!a || !b) return std::nullopt;
    return at_index(*a, *b);
  }

  std::optional<std::size_t> index(NodeId node) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), node);
    if (it == ids_.end() || *it != node) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
  }

 private:
  std::vector<NodeId> ids_;
  std::vector<std::vector<Entry>> rows_;
};

inline NormalizedWeights normalized_weights(const SocialGraph& g) {
  std::vector<std::vector<NormalizedWeights::Entry>> rows(g.node_count());
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    auto nbrs = g.neighbors(i);
    double total = 0.0;
    for (const auto& n : nbrs) total += n.weight;
    rows[i].reserve(nbrs.size());
    for (const auto& n : nbrs) rows[i].push_back({n.index, n.weight / total});
  }
  auto ids = g.nodes();
  return NormalizedWeights({ids.begin(), ids.end()}, std::move(rows));
}

// Normalization restricted to edges of one label; rows cover only label
// neighbors and nodes without such edges have empty rows.
inline NormalizedWeights labeled_normalized_weights(const SocialGraph& g, const Label& label) {
  return normalized_weights(label_subgraph(g, label));
}

struct ShortestPaths {
  std::size_t distance = 0;
  std::vector<std::vector<NodeId>> paths;
  bool truncated = false;
};

namespace detail {

// Result of walking the shortest-path DAG toward one target.
struct PathWalk {
  std::size_t used = 0;
  bool truncated = false;
};

// Reusable scratch space for walk_shortest_paths.
struct PathWorkspace {
  std::vector<char> on_dag;
  std::vector<std::size_t> touched;
  std::vector<std::size_t> queue;
  std::vector<std::size_t> path;
  std::vector<std::size_t> cursor;
};

/// Visits distinct shortest paths from `source` to `target` in lexicographic
/// order of their node sequences (ascending NodeId at each step). `dist` must
/// hold BFS distances from `source`, exact at least up to dist[target].
/// At most `cap` paths are visited; truncated is set iff another one exists.
template <typename Visit>
PathWalk walk_shortest_paths(const SocialGraph& g, std::span<const std::size_t> dist,
                             std::size_t source, std::size_t target, std::size_t cap,
                             PathWorkspace& ws, Visit&& visit) {
  PathWalk walk;
  const std::size_t n = dist[target];
  if (n == kUnreachable || n == 0) return walk;

  // Mark nodes lying on some shortest source-target path by walking
  // predecessors back from the target.
  ws.on_dag.resize(g.node_count(), 0);
  ws.queue.clear();
  ws.queue.push_back(target);
  ws.on_dag[target] = 1;
  ws.touched.push_back(target);
  for (std::size_t head = 0; head < ws.queue.size(); ++head) {
    const std::size_t x = ws.queue[head];
    if (dist[x] == 0) continue;
    for (const auto& nb : g.neighbors(x)) {
      if (dist[nb.index] == kUnreachable || dist[nb.index] + 1 != dist[x] ||
          ws.on_dag[nb.index])
        continue;
      ws.on_dag[nb.index] = 1;
      ws.touched.push_back(nb.index);
      ws.queue.push_back(nb.index);
    }
  }

  ws.path.assign(1, source);
  ws.cursor.assign(1, 0);
  while (!ws.path.empty()) {
    const std::size_t depth = ws.path.size() - 1;
    const std::size_t u = ws.path.back();
    if (u == target) {
      if (walk.used == cap) {
        walk.truncated = true;
        break;
      }
      ++walk.used;
      visit(std::span<const std::size_t>(ws.path));
      ws.path.pop_back();
      ws.cursor.pop_back();
      continue;
    }
    auto nbrs = g.neighbors(u);
    std::size_t& pos = ws.cursor.back();
    while (pos < nbrs.size() &&
           !(ws.on_dag[nbrs[pos].index] && dist[nbrs[pos].index] == depth + 1))
      ++pos;
    if (pos == nbrs.size()) {
      ws.path.pop_back();
      ws.cursor.pop_back();
      continue;
    }
    const std::size_t next = nbrs[pos++].index;
    ws.path.push_back(next);
    ws.cursor.push_back(0);
  }

  for (std::size_t v : ws.touched) ws.on_dag[v] = 0;
  ws.touched.clear();
  return walk;
}

inline std::pair<std::size_t, std::size_t> checked_pair(const SocialGraph& g, NodeId i,
                                                        NodeId m) {
  if (i == m) throw InvalidArgument("source and target must differ");
  return {g.index_of(i), g.index_of(m)};
}

}  // namespace detail

/// All distinct unweighted shortest paths from i to m, lexicographically
/// ordered, at most `cap` of them.
inline ShortestPaths shortest_paths_exact(const SocialGraph& g, NodeId i, NodeId m,
                                          std::size_t cap = kDefaultPathCap) {
  if (cap == 0) throw InvalidArgument("path cap must be positive");
  auto [src, dst] = detail::checked_pair(g, i, m);
  auto dist = bfs_distances(g, src);
  if (dist[dst] == kUnreachable)
    throw NoPath("no path between " + std::to_string(i) + " and " + std::to_string(m));
  ShortestPaths out;
  out.distance = dist[dst];
  detail::PathWorkspace ws;
  auto walk = detail::walk_shortest_paths(g, dist, src, dst, cap, ws,
                                          [&](std::span<const std::size_t> p) {
                                            std::vector<NodeId> ids;
                                            ids.reserve(p.size());
                                            for (auto v : p) ids.push_back(g.id(v));
                                            out.paths.push_back(std::move(ids));
                                          });
  out.truncated = walk.truncated;
  return out;
}

struct StrengthEntry {
  std::size_t n = 0;
  double ss = 0.0;
  std::size_t path_count = 0;
  bool truncated = false;

  friend bool operator==(const StrengthEntry&, const StrengthEntry&) = default;
};

namespace detail {

inline double directed_nw(const NormalizedWeights& nw, std::size_t from, std::size_t to) {
  auto v = nw.at_index(from, to);
  if (!v) throw InvalidArgument("normalized weights do not cover a graph edge");
  return *v;
}

// Strength from `source` to `target` given BFS distances from the source.
inline StrengthEntry strength_from_dist(const SocialGraph& g, const NormalizedWeights& nw,
                                        std::span<const std::size_t> dist, std::size_t source,
                                        std::size_t target, std::size_t cap,
                                        PathWorkspace& ws) {
  StrengthEntry e;
  e.n = dist[target];
  if (e.n == 1) {
    e.ss = directed_nw(nw, source, target);
    e.path_count = 1;
    return e;
  }
  const double hops = static_cast<double>(e.n);
  double ss = 0.0;  // running 1 - prod(1 - x), exact for a single path
  auto walk = walk_shortest_paths(g, dist, source, target, cap, ws,
                                  [&](std::span<const std::size_t> p) {
                                    double bottleneck = 1.0;
                                    for (std::size_t s = 0; s + 1 < p.size(); ++s)
                                      bottleneck = std::min(bottleneck, directed_nw(nw, p[s], p[s + 1]));
                                    const double x = bottleneck / hops;
                                    ss += x * (1.0 - ss);
                                  });
  e.ss = ss;
  e.path_count = walk.used;
  e.truncated = walk.truncated;
  return e;
}

}  // namespace detail

/// Strength of the tie from i's perspective toward m. Each distinct shortest
/// path contributes its weakest normalized weight (read in the i-to-m
/// direction) divided by the hop count n; contributions combine as
/// 1 - prod(1 - x_p). Adjacent pairs return nw(i, m) directly.
inline StrengthEntry social_strength(const SocialGraph& g, const NormalizedWeights& nw, NodeId i,
                                     NodeId m, std::size_t cap = kDefaultPathCap) {
  if (cap == 0) throw InvalidArgument("path cap must be positive");
  auto [src, dst] = detail::checked_pair(g, i, m);
  auto dist = bfs_distances(g, src);
  if (dist[dst] == kUnreachable)
    throw NoPath("no path between " + std::to_string(i) + " and " + std::to_string(m));
  detail::PathWorkspace ws;
  return detail::strength_from_dist(g, nw, dist, src, dst, cap, ws);
}

// Strength values for every ordered pair at one exact hop distance.
class StrengthTable {
 public:
  using Key = std::pair<NodeId, NodeId>;

  StrengthTable() = default;
  explicit StrengthTable(std::size_t hop) : hop_(hop) {}

  std::size_t hop() const noexcept { return hop_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::map<Key, StrengthEntry>& entries() const noexcept { return entries_; }

  void insert(NodeId from, NodeId to, const StrengthEntry& e) { entries_[{from, to}] = e; }

  const StrengthEntry* find(NodeId from, NodeId to) const {
    auto it = entries_.find({from, to});
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool has_source(NodeId owner) const {
    auto it = entries_.lower_bound({owner, 0});
    return it != entries_.end() && it->first.first == owner;
  }

  // Entries whose source is `owner`, ascending by target.
  std::vector<std::pair<NodeId, StrengthEntry>> row(NodeId owner) const {
    std::vector<std::pair<NodeId, StrengthEntry>> out;
    for (auto it = entries_.lower_bound({owner, 0});
         it != entries_.end() && it->first.first == owner; ++it)
      out.emplace_back(it->first.second, it->second);
    return out;
  }

  friend bool operator==(const StrengthTable&, const StrengthTable&) = default;

 private:
  std::size_t hop_ = 0;
  std::map<Key, StrengthEntry> entries_;
};

/// Social strength for every ordered pair at exact distance n. Sources are
/// split across `threads` workers (0 = hardware concurrency); the result does
/// not depend on the thread count.
inline StrengthTable strength_table(const SocialGraph& g, const NormalizedWeights& nw,
                                    std::size_t n, std::size_t cap = kDefaultPathCap,
                                    unsigned threads = 1) {
  if (n == 0) throw InvalidArgument("hop distance must be at least 1");
  if (cap == 0) throw InvalidArgument("path cap must be positive");
  const std::size_t V = g.node_count();
  using Row = std::vector<std::pair<std::size_t, StrengthEntry>>;
  std::vector<Row> rows(V);

  auto work = [&](std::size_t begin, std::size_t stride) {
    detail::PathWorkspace ws;
    for (std::size_t s = begin; s < V; s += stride) {
      auto dist = bfs_distances(g, s, n);
      for (std::size_t t = 0; t < V; ++t)
        if (dist[t] == n) rows[s].emplace_back(t, detail::strength_from_dist(g, nw, dist, s, t, cap, ws));
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(V, 1)));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
  }

  StrengthTable table(n);
  for (std::size_t s = 0; s < V; ++s)
    for (const auto& [t, e] : rows[s]) table.insert(g.id(s), g.id(t), e);
  return table;
}

// Size of the top-`fraction` cut of a list of `len` entries, rounded up.
inline std::size_t top_cut(std::size_t len, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw InvalidArgument("top fraction must be in (0, 1]");
  // the slack keeps products like 0.1 * 30 from rounding up to 4
  auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(len) - 1e-9));
  return std::min(k, len);
}

struct RankedNode {
  NodeId node = 0;
  double ss = 0.0;
};

// One owner's view of their distance-n contacts, strongest first.
struct RankList {
  NodeId owner = 0;
  std::size_t n = 0;
  std::vector<RankedNode> ranked;

  // 1-based rank, or nullopt if absent.
  std::optional<std::size_t> rank_of(NodeId node) const {
    for (std::size_t r = 0; r < ranked.size(); ++r)
      if (ranked[r].node == node) return r + 1;
    return std::nullopt;
  }

  bool in_top(NodeId node, double fraction) const {
    auto r = rank_of(node);
    return r && *r <= top_cut(ranked.size(), fraction);
  }
};

inline RankList social_ranks(const StrengthTable& table, NodeId owner) {
  if (!table.has_source(owner))
    throw NotFound("node " + std::to_string(owner) + " has no entries in the strength table");
  RankList list{owner, table.hop(), {}};
  for (const auto& [node, e] : table.row(owner)) list.ranked.push_back({node, e.ss});
  std::stable_sort(list.ranked.begin(), list.ranked.end(),
                   [](const RankedNode& a, const RankedNode& b) {
                     if (a.ss != b.ss) return a.ss > b.ss;
                     return a.node < b.node;
                   });
  return list;
}

}  // namespace sstie
