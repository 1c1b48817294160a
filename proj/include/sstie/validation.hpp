#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sstie/error.hpp"
#include "sstie/graph.hpp"
#include "sstie/strength.hpp"

namespace sstie {

// Neighborhood overlap |N(s) & N(r)| / |N(s) | N(r)| on the unlabeled projection.
inline double jaccard(const SocialGraph& g, NodeId s, NodeId r) {
  if (s == r) throw InvalidArgument("jaccard needs two distinct nodes");
  auto ns = g.neighbors(g.index_of(s));
  auto nr = g.neighbors(g.index_of(r));
  std::size_t common = 0;
  for (auto a = ns.begin(), b = nr.begin(); a != ns.end() && b != nr.end();) {
    if (a->index < b->index) {
      ++a;
    } else if (b->index < a->index) {
      ++b;
    } else {
      ++common;
      ++a;
      ++b;
    }
  }
  const std::size_t denom = ns.size() + nr.size() - common;
  return denom == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(denom);
}

// Two metric columns over shared pair keys.
struct PairedSeries {
  std::string label_x = "x";
  std::string label_y = "y";
  std::vector<std::pair<NodeId, NodeId>> keys;
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const noexcept { return x.size(); }

  void push(std::pair<NodeId, NodeId> key, double xv, double yv) {
    keys.push_back(key);
    x.push_back(xv);
    y.push_back(yv);
  }
};

inline double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("pearson: column lengths differ");
  if (x.size() < 2) throw InvalidArgument("pearson needs at least two pairs");
  auto check = [](std::span<const double> v, const char* which) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (std::isnan(*lo) || std::isnan(*hi) ||
        std::any_of(v.begin(), v.end(), [](double d) { return std::isnan(d); }))
      throw InvalidArgument(std::string("pearson: NaN in column ") + which);
    if (*hi - *lo <= 1e-12 * std::max(std::abs(*lo), std::abs(*hi)))
      throw ZeroVariance(std::string("pearson: column ") + which + " has zero variance");
  };
  check(x, "x");
  check(y, "y");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline double pearson(const PairedSeries& s) { return pearson(s.x, s.y); }

struct CorrelationReport {
  std::string label_x;
  std::string label_y;
  double coefficient = 0.0;
  std::size_t n_pairs = 0;
  bool zero_filtered = false;
  double removed_fraction = 0.0;
};

/// Jaccard and 2-hop strength for every unordered pair at distance 2. The
/// strength is read from the lower NodeId toward the higher one.
inline PairedSeries jc_ss2_series(const SocialGraph& g, const NormalizedWeights& nw,
                                  std::size_t cap = kDefaultPathCap) {
  PairedSeries series{"jc", "ss2", {}, {}, {}};
  auto table = strength_table(g, nw, 2, cap);
  for (const auto& [key, e] : table.entries()) {
    if (key.first > key.second) continue;
    series.push(key, jaccard(g, key.first, key.second), e.ss);
  }
  return series;
}

inline CorrelationReport correlate_jc_ss2(const SocialGraph& g,
                                          std::size_t cap = kDefaultPathCap) {
  auto series = jc_ss2_series(g, normalized_weights(g), cap);
  if (series.size() < 2) throw InvalidArgument("fewer than two pairs at distance 2");
  return {"jc", "ss2", pearson(series), series.size(), false, 0.0};
}

enum class ZeroPolicy { include_zeros, drop_zeros };

inline std::string_view to_string(ZeroPolicy p) {
  return p == ZeroPolicy::include_zeros ? "include_zeros" : "drop_zeros";
}

// One direct tie examined with the tie itself hidden.
struct TriadRecord {
  NodeId a = 0;  // lower id, the strength source
  NodeId b = 0;
  double weight = 0.0;  // label-summed direct weight
  double jc = 0.0;      // on the intact graph
  double ss = 0.0;      // on the graph without the a-b tie; 0 if disconnected
  std::size_t n = 0;    // new distance, 0 if disconnected
  std::size_t path_count = 0;
  bool truncated = false;
};

/// For every edge (a, b): its weight, its Jaccard overlap, and the strength
/// from a to b once every a-b edge is removed (n is the new shortest
/// distance). Pairs left disconnected get ss = 0 and n = 0.
inline std::vector<TriadRecord> triad_records(const SocialGraph& g,
                                              std::size_t cap = kDefaultPathCap) {
  if (g.edge_count() < 2) throw InvalidArgument("triad experiment needs at least two edges");
  std::vector<TriadRecord> out;
  for (std::size_t u = 0; u < g.node_count(); ++u)
    for (const auto& nb : g.neighbors(u)) {
      if (nb.index < u) continue;
      TriadRecord rec;
      rec.a = g.id(u);
      rec.b = g.id(nb.index);
      rec.weight = nb.weight;
      rec.jc = jaccard(g, rec.a, rec.b);
      auto reduced = without_pair(g, rec.a, rec.b);
      auto dist = bfs_distances(reduced, u);
      if (dist[nb.index] != kUnreachable) {
        auto nw = normalized_weights(reduced);
        detail::PathWorkspace ws;
        auto e = detail::strength_from_dist(reduced, nw, dist, u, nb.index, cap, ws);
        rec.ss = e.ss;
        rec.n = e.n;
        rec.path_count = e.path_count;
        rec.truncated = e.truncated;
      }
      out.push_back(rec);
    }
  return out;
}

struct TriadResult {
  ZeroPolicy policy = ZeroPolicy::include_zeros;
  std::size_t total_pairs = 0;
  double removed_fraction = 0.0;
  // PC(weight, JC), PC(weight, SS), PC(JC, SS), in that order.
  std::vector<CorrelationReport> reports;
};

inline TriadResult triad_correlations(std::span<const TriadRecord> records, ZeroPolicy policy) {
  std::vector<double> w, jc, ss;
  for (const auto& r : records) {
    if (policy == ZeroPolicy::drop_zeros && r.ss == 0.0) continue;
    w.push_back(r.weight);
    jc.push_back(r.jc);
    ss.push_back(r.ss);
  }
  if (w.size() < 2) throw InvalidArgument("fewer than two pairs survive zero filtering");
  TriadResult res;
  res.policy = policy;
  res.total_pairs = records.size();
  const bool filtered = policy == ZeroPolicy::drop_zeros;
  if (filtered)
    res.removed_fraction =
        static_cast<double>(records.size() - w.size()) / static_cast<double>(records.size());
  auto report = [&](const char* lx, const std::vector<double>& x, const char* ly,
                    const std::vector<double>& y) {
    return CorrelationReport{lx, ly, pearson(x, y), x.size(), filtered, res.removed_fraction};
  };
  res.reports.push_back(report("weight", w, "jc", jc));
  res.reports.push_back(report("weight", w, "ss", ss));
  res.reports.push_back(report("jc", jc, "ss", ss));
  return res;
}

inline TriadResult triad_experiment(const SocialGraph& g, ZeroPolicy policy,
                                    std::size_t cap = kDefaultPathCap) {
  auto records = triad_records(g, cap);
  return triad_correlations(records, policy);
}

}  // namespace sstie
