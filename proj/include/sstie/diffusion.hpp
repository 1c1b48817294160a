#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sstie/error.hpp"
#include "sstie/graph.hpp"
#include "sstie/rng.hpp"
#include "sstie/strength.hpp"

namespace sstie {

// Transmission probability P = beta * w per pair with beta = 1 / max weight,
// stored aligned with the graph's adjacency lists.
struct EdgeProbabilities {
  double beta = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<std::vector<double>> rows;

  // One entry per unordered pair (a < b), ascending.
  std::vector<std::tuple<NodeId, NodeId, double>> list(const SocialGraph& g) const {
    std::vector<std::tuple<NodeId, NodeId, double>> out;
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      auto nbrs = g.neighbors(u);
      for (std::size_t k = 0; k < nbrs.size(); ++k)
        if (nbrs[k].index > u) out.emplace_back(g.id(u), g.id(nbrs[k].index), rows[u][k]);
    }
    return out;
  }
};

inline EdgeProbabilities edge_probabilities(const SocialGraph& g) {
  if (g.edge_count() == 0) throw InvalidArgument("edge probabilities need at least one edge");
  EdgeProbabilities p;
  const auto [lo, hi] = g.weight_range();
  p.beta = 1.0 / hi;
  p.min = lo / hi;
  p.max = 1.0;
  p.rows.resize(g.node_count());
  for (std::size_t u = 0; u < g.node_count(); ++u)
    for (const auto& nb : g.neighbors(u)) p.rows[u].push_back(nb.weight / hi);
  return p;
}

// Value at quantile q in [0, 1] of the per-pair probabilities (nearest rank).
inline double probability_quantile(const SocialGraph& g, const EdgeProbabilities& p, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("quantile must be in [0, 1]");
  std::vector<double> v;
  for (const auto& [a, b, pr] : p.list(g)) v.push_back(pr);
  std::sort(v.begin(), v.end());
  auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::min(idx == 0 ? 0 : idx - 1, v.size() - 1)];
}

// threshold: an edge transmits iff P >= p0 (bond percolation).
// stochastic: each step every infected node infects each susceptible
// neighbor with probability P.
enum class SpreadMode { threshold, stochastic };

struct DiffusionConfig {
  double p0 = 0.0;
  std::optional<NodeId> seed_node;  // nullopt draws one uniformly from rng_seed
  std::uint64_t rng_seed = 0;
  std::size_t max_steps = kUnreachable;
  SpreadMode mode = SpreadMode::threshold;
};

struct DiffusionTrace {
  NodeId seed = 0;
  std::map<NodeId, std::size_t> infected_at;  // infected nodes only

  std::optional<std::size_t> step(NodeId node) const {
    auto it = infected_at.find(node);
    if (it == infected_at.end()) return std::nullopt;
    return it->second;
  }
};

inline NodeId draw_node(const SocialGraph& g, Rng& rng) {
  if (g.empty()) throw InvalidArgument("cannot draw a node from an empty graph");
  std::uniform_int_distribution<std::size_t> pick(0, g.node_count() - 1);
  return g.id(pick(rng));
}

inline DiffusionTrace simulate_si(const SocialGraph& g, const EdgeProbabilities& probs,
                                  const DiffusionConfig& cfg) {
  if (cfg.max_steps < 1) throw InvalidArgument("max_steps must be at least 1");
  DiffusionTrace trace;
  if (cfg.seed_node) {
    trace.seed = *cfg.seed_node;
  } else {
    auto rng = make_rng(cfg.rng_seed, "diffusion.seed");
    trace.seed = draw_node(g, rng);
  }
  const std::size_t seed = g.index_of(trace.seed);
  std::vector<std::size_t> when(g.node_count(), kUnreachable);
  when[seed] = 0;

  if (cfg.mode == SpreadMode::threshold) {
    std::vector<std::size_t> frontier{seed};
    for (std::size_t step = 1; step <= cfg.max_steps && !frontier.empty(); ++step) {
      std::vector<std::size_t> next;
      for (std::size_t u : frontier) {
        auto nbrs = g.neighbors(u);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
          const std::size_t v = nbrs[k].index;
          if (when[v] != kUnreachable || probs.rows[u][k] < cfg.p0) continue;
          when[v] = step;
          next.push_back(v);
        }
      }
      frontier.swap(next);
    }
  } else {
    auto rng = make_rng(cfg.rng_seed, "diffusion.spread");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::size_t> infected{seed};
    for (std::size_t step = 1; step <= cfg.max_steps && infected.size() < g.node_count(); ++step) {
      std::vector<std::size_t> next;
      for (std::size_t u : infected) {
        auto nbrs = g.neighbors(u);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
          const std::size_t v = nbrs[k].index;
          if (when[v] != kUnreachable) continue;
          if (unit(rng) < probs.rows[u][k]) {
            when[v] = step;
            next.push_back(v);
          }
        }
      }
      infected.insert(infected.end(), next.begin(), next.end());
    }
  }

  for (std::size_t v = 0; v < g.node_count(); ++v)
    if (when[v] != kUnreachable) trace.infected_at.emplace(g.id(v), when[v]);
  return trace;
}

inline DiffusionTrace simulate_si(const SocialGraph& g, const DiffusionConfig& cfg) {
  return simulate_si(g, edge_probabilities(g), cfg);
}

/// Distance-n contacts of `seed` predicted to receive the information at
/// step n: both must rank each other within the top `top_fraction` of their
/// own distance-n rank lists.
inline std::vector<NodeId> predict_infected_at_n(const StrengthTable& table, NodeId seed,
                                                 double top_fraction = 0.10) {
  if (!table.has_source(seed))
    throw InvalidArgument("node " + std::to_string(seed) + " has no distance-" +
                          std::to_string(table.hop()) + " contacts");
  auto own = social_ranks(table, seed);
  const std::size_t cut = top_cut(own.ranked.size(), top_fraction);
  std::vector<NodeId> out;
  for (std::size_t r = 0; r < cut; ++r) {
    const NodeId m = own.ranked[r].node;
    if (social_ranks(table, m).in_top(seed, top_fraction)) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Everyone at distance n accepts.
inline std::vector<NodeId> baseline_predict(const SocialGraph& g, NodeId seed, std::size_t n) {
  return hop_ring(g, seed, n);
}

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct PredictionOutcome {
  std::vector<NodeId> population;
  std::vector<NodeId> predicted;
  std::vector<NodeId> actual;
  ConfusionCounts counts;
};

// Sensitivity and specificity are nullopt when their denominator is zero.
struct EvalMetrics {
  double accuracy = 0.0;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
};

inline EvalMetrics metrics_from_counts(const ConfusionCounts& c) {
  if (c.total() == 0) throw InvalidArgument("empty population");
  EvalMetrics m;
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  if (c.tp + c.fn > 0)
    m.sensitivity = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  if (c.tn + c.fp > 0)
    m.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
  return m;
}

// exact: positive iff infected at step n. cumulative: infected at step <= n.
enum class ActualRule { exact, cumulative };

inline std::pair<PredictionOutcome, EvalMetrics> evaluate_prediction(
    const DiffusionTrace& trace, std::vector<NodeId> predicted, std::vector<NodeId> population,
    std::size_t n, ActualRule rule = ActualRule::exact) {
  if (population.empty()) throw InvalidArgument("empty population");
  std::sort(population.begin(), population.end());
  population.erase(std::unique(population.begin(), population.end()), population.end());
  std::sort(predicted.begin(), predicted.end());
  predicted.erase(std::unique(predicted.begin(), predicted.end()), predicted.end());
  if (!std::includes(population.begin(), population.end(), predicted.begin(), predicted.end()))
    throw InvalidArgument("predicted set is not a subset of the population");

  PredictionOutcome out;
  for (NodeId m : population) {
    auto step = trace.step(m);
    const bool actual = step && (rule == ActualRule::exact ? *step == n : *step <= n);
    const bool guess = std::binary_search(predicted.begin(), predicted.end(), m);
    if (actual) out.actual.push_back(m);
    if (guess && actual) ++out.counts.tp;
    else if (guess) ++out.counts.fp;
    else if (actual) ++out.counts.fn;
    else ++out.counts.tn;
  }
  out.population = std::move(population);
  out.predicted = std::move(predicted);
  auto metrics = metrics_from_counts(out.counts);
  return {std::move(out), metrics};
}

inline std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  if (steps == 0) throw InvalidArgument("linspace needs at least one step");
  if (steps == 1) return {lo};
  std::vector<double> v(steps);
  for (std::size_t i = 0; i < steps; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  return v;
}

struct SweepConfig {
  std::vector<double> p0_values;
  std::size_t n = 2;
  std::size_t iterations = 100;
  std::uint64_t rng_seed = 0;
  double top_fraction = 0.10;
  ActualRule rule = ActualRule::exact;
  SpreadMode mode = SpreadMode::threshold;
  std::size_t cap = kDefaultPathCap;
  std::optional<NodeId> seed_node;  // fixed seed for every iteration
};

// Per-(p0, method) averages. Each metric is averaged over the iterations where
// it is defined; defined_count counts iterations where all three are defined.
struct SweepRow {
  double p0 = 0.0;
  std::size_t n = 0;
  std::string method;
  double accuracy = std::numeric_limits<double>::quiet_NaN();
  double sensitivity = std::numeric_limits<double>::quiet_NaN();
  double specificity = std::numeric_limits<double>::quiet_NaN();
  std::size_t sensitivity_count = 0;
  std::size_t specificity_count = 0;
  std::size_t defined_count = 0;
};

inline constexpr const char* kPredictorMethod = "ss_rank";
inline constexpr const char* kBaselineMethod = "baseline";

/// Runs `iterations` single-seed diffusions per threshold and scores the
/// rank predictor and the all-contacts baseline against each. Iteration i
/// draws its seed from its own substream, among nodes that have distance-n
/// contacts, and reuses it for every threshold. `table` must hold distance n.
inline std::vector<SweepRow> sweep_experiment(const SocialGraph& g, const StrengthTable& table,
                                              const SweepConfig& cfg) {
  if (cfg.p0_values.empty()) throw InvalidArgument("sweep needs at least one p0 value");
  if (cfg.iterations < 1) throw InvalidArgument("sweep needs at least one iteration");
  if (table.hop() != cfg.n) throw InvalidArgument("strength table distance does not match n");

  std::vector<NodeId> eligible;
  for (NodeId v : g.nodes())
    if (table.has_source(v)) eligible.push_back(v);
  if (eligible.empty())
    throw InvalidArgument("no node has contacts at distance " + std::to_string(cfg.n));

  const auto probs = edge_probabilities(g);
  struct Acc {
    double acc = 0, sens = 0, spec = 0;
    std::size_t acc_n = 0, sens_n = 0, spec_n = 0, both_n = 0;
    void add(const EvalMetrics& m) {
      acc += m.accuracy;
      ++acc_n;
      if (m.sensitivity) sens += *m.sensitivity, ++sens_n;
      if (m.specificity) spec += *m.specificity, ++spec_n;
      if (m.sensitivity && m.specificity) ++both_n;
    }
  };
  std::vector<Acc> ss_acc(cfg.p0_values.size()), base_acc(cfg.p0_values.size());

  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    NodeId seed = 0;
    if (cfg.seed_node) {
      seed = *cfg.seed_node;
    } else {
      auto rng = make_rng(cfg.rng_seed, "sweep.seed", it);
      std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
      seed = eligible[pick(rng)];
    }
    const auto population = baseline_predict(g, seed, cfg.n);
    const auto predicted = predict_infected_at_n(table, seed, cfg.top_fraction);
    for (std::size_t k = 0; k < cfg.p0_values.size(); ++k) {
      DiffusionConfig dc;
      dc.p0 = cfg.p0_values[k];
      dc.seed_node = seed;
      dc.rng_seed = substream_seed(cfg.rng_seed, "sweep.spread", it);
      dc.mode = cfg.mode;
      const auto trace = simulate_si(g, probs, dc);
      ss_acc[k].add(evaluate_prediction(trace, predicted, population, cfg.n, cfg.rule).second);
      base_acc[k].add(evaluate_prediction(trace, population, population, cfg.n, cfg.rule).second);
    }
  }

  std::vector<SweepRow> rows;
  auto emit = [&](double p0, const char* method, const Acc& a) {
    SweepRow r;
    r.p0 = p0;
    r.n = cfg.n;
    r.method = method;
    r.accuracy = a.acc / static_cast<double>(a.acc_n);
    if (a.sens_n) r.sensitivity = a.sens / static_cast<double>(a.sens_n);
    if (a.spec_n) r.specificity = a.spec / static_cast<double>(a.spec_n);
    r.sensitivity_count = a.sens_n;
    r.specificity_count = a.spec_n;
    r.defined_count = a.both_n;
    rows.push_back(r);
  };
  for (std::size_t k = 0; k < cfg.p0_values.size(); ++k) {
    emit(cfg.p0_values[k], kPredictorMethod, ss_acc[k]);
    emit(cfg.p0_values[k], kBaselineMethod, base_acc[k]);
  }
  return rows;
}

inline std::vector<SweepRow> sweep_experiment(const SocialGraph& g, const SweepConfig& cfg) {
  auto table = strength_table(g, normalized_weights(g), cfg.n, cfg.cap);
  return sweep_experiment(g, table, cfg);
}

}  // namespace sstie
