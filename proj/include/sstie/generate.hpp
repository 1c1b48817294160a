#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sstie/error.hpp"
#include "sstie/graph.hpp"
#include "sstie/rng.hpp"

namespace sstie {

enum class GraphModel { erdos_renyi, barabasi_albert, weighted_complete };

// uniform: independent integer draws in [min, max].
// activity: each node gets a log-normal activity level and an edge weight is
// the product of its endpoints' activities times a uniform noise factor,
// rounded and clamped into [min, max].
enum class WeightModel { uniform, activity };

struct WeightSpec {
  WeightModel model = WeightModel::uniform;
  int min = 1;
  int max = 50;
  double activity_sigma = 0.8;

  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;
};

struct GeneratorParams {
  GraphModel model = GraphModel::erdos_renyi;
  std::size_t nodes = 0;
  double p = 0.0;       // erdos_renyi edge probability
  std::size_t m = 0;    // barabasi_albert edges per new node
  WeightSpec weights;

  friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

inline std::string_view to_string(GraphModel m) {
  switch (m) {
    case GraphModel::erdos_renyi: return "erdos_renyi";
    case GraphModel::barabasi_albert: return "barabasi_albert";
    case GraphModel::weighted_complete: return "weighted_complete";
  }
  return "?";
}

inline GraphModel parse_graph_model(std::string_view s) {
  if (s == "erdos_renyi" || s == "er") return GraphModel::erdos_renyi;
  if (s == "barabasi_albert" || s == "ba") return GraphModel::barabasi_albert;
  if (s == "weighted_complete" || s == "complete") return GraphModel::weighted_complete;
  throw InvalidArgument("unknown graph model '" + std::string(s) + "'");
}

inline std::string_view to_string(WeightModel m) {
  return m == WeightModel::uniform ? "uniform" : "activity";
}

inline WeightModel parse_weight_model(std::string_view s) {
  if (s == "uniform") return WeightModel::uniform;
  if (s == "activity") return WeightModel::activity;
  throw InvalidArgument("unknown weight model '" + std::string(s) + "'");
}

inline void validate(const GeneratorParams& p) {
  if (p.nodes == 0) throw InvalidArgument("generator needs at least one node");
  if (p.weights.min < 1 || p.weights.max < p.weights.min)
    throw InvalidArgument("weight range must satisfy 1 <= min <= max");
  if (!(p.weights.activity_sigma >= 0.0)) throw InvalidArgument("activity sigma must be >= 0");
  switch (p.model) {
    case GraphModel::erdos_renyi:
      if (!(p.p >= 0.0 && p.p <= 1.0)) throw InvalidArgument("edge probability must be in [0, 1]");
      break;
    case GraphModel::barabasi_albert:
      if (p.m < 1 || p.m >= p.nodes) throw InvalidArgument("barabasi_albert needs 1 <= m < nodes");
      break;
    case GraphModel::weighted_complete:
      break;
  }
}

namespace detail {

inline std::vector<std::pair<NodeId, NodeId>> erdos_renyi_pairs(std::size_t n, double p, Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> out;
  std::bernoulli_distribution coin(p);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (coin(rng)) out.emplace_back(i, j);
  return out;
}

// Preferential attachment: nodes 0..m-1 start unconnected, node m links to
// all of them, later nodes pick m distinct targets with probability
// proportional to degree.
inline std::vector<std::pair<NodeId, NodeId>> barabasi_albert_pairs(std::size_t n, std::size_t m,
                                                                    Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> out;
  std::vector<NodeId> repeated;
  std::vector<NodeId> targets;
  for (NodeId t = 0; t < m; ++t) targets.push_back(t);
  for (NodeId source = m; source < n; ++source) {
    for (NodeId t : targets) {
      out.emplace_back(t, source);
      repeated.push_back(t);
      repeated.push_back(source);
    }
    std::set<NodeId> picked;
    std::uniform_int_distribution<std::size_t> pick(0, repeated.size() - 1);
    while (picked.size() < m) picked.insert(repeated[pick(rng)]);
    targets.assign(picked.begin(), picked.end());
  }
  return out;
}

}  // namespace detail

/// Synthetic weighted graph on nodes 0..nodes-1. Structure and weights come
/// from separate substreams of `seed`; identical inputs give identical graphs.
inline SocialGraph generate_graph(const GeneratorParams& params, std::uint64_t seed) {
  validate(params);
  auto structure_rng = make_rng(seed, "graph.structure");
  auto weight_rng = make_rng(seed, "graph.weights");

  std::vector<std::pair<NodeId, NodeId>> pairs;
  switch (params.model) {
    case GraphModel::erdos_renyi:
      pairs = detail::erdos_renyi_pairs(params.nodes, params.p, structure_rng);
      break;
    case GraphModel::barabasi_albert:
      pairs = detail::barabasi_albert_pairs(params.nodes, params.m, structure_rng);
      break;
    case GraphModel::weighted_complete:
      pairs = detail::erdos_renyi_pairs(params.nodes, 1.0, structure_rng);
      break;
  }
  std::sort(pairs.begin(), pairs.end());

  const auto& ws = params.weights;
  std::vector<double> activity(params.nodes, 1.0);
  if (ws.model == WeightModel::activity) {
    std::normal_distribution<double> z(0.0, 1.0);
    for (auto& a : activity) a = std::exp(ws.activity_sigma * z(weight_rng));
  }
  std::uniform_int_distribution<int> uniform(ws.min, ws.max);
  std::uniform_real_distribution<double> noise(0.5, 1.5);
  const double scale = std::sqrt(static_cast<double>(ws.min) * ws.max);

  GraphBuilder builder;
  for (NodeId v = 0; v < params.nodes; ++v) builder.add_node(v);
  for (const auto& [a, b] : pairs) {
    double w = 0.0;
    if (ws.model == WeightModel::uniform) {
      w = uniform(weight_rng);
    } else {
      w = std::round(scale * activity[a] * activity[b] * noise(weight_rng));
      w = std::clamp(w, static_cast<double>(ws.min), static_cast<double>(ws.max));
    }
    builder.add_edge(a, b, w);
  }
  return builder.build();
}

}  // namespace sstie
