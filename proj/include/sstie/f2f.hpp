#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sstie/error.hpp"
#include "sstie/graph.hpp"
#include "sstie/io.hpp"
#include "sstie/rng.hpp"
#include "sstie/strength.hpp"

namespace sstie {

// Weakest normalized weight in the owner's row.
inline double theta(const NormalizedWeights& nw, NodeId owner) {
  auto idx = nw.index(owner);
  if (!idx) throw NotFound("node " + std::to_string(owner) + " not in graph");
  auto row = nw.row(*idx);
  if (row.empty()) throw InvalidArgument("node " + std::to_string(owner) + " is isolated");
  double lo = row.front().value;
  for (const auto& e : row) lo = std::min(lo, e.value);
  return lo;
}

struct CandidateSet {
  NodeId owner = 0;
  double theta = 0.0;
  std::size_t n = 0;
  std::vector<NodeId> direct;                 // ascending
  std::map<NodeId, StrengthEntry> expanded;   // distance-n contacts with ss >= theta

  double expansion_rate() const {
    return direct.empty() ? 0.0
                          : static_cast<double>(expanded.size()) / static_cast<double>(direct.size());
  }
};

/// Adds every distance-n contact m with SS_n(owner, m) >= theta(owner) to the
/// owner's direct friends. `table` must hold the requested distance.
inline CandidateSet expand_candidates(const SocialGraph& g, const NormalizedWeights& nw,
                                      const StrengthTable& table, NodeId owner) {
  CandidateSet set;
  set.owner = owner;
  set.n = table.hop();
  set.theta = theta(nw, owner);
  for (const auto& nb : g.neighbors(g.index_of(owner))) set.direct.push_back(g.id(nb.index));
  for (const auto& [m, e] : table.row(owner))
    if (e.ss >= set.theta) set.expanded.emplace(m, e);
  return set;
}

// Candidate sets of every non-isolated node, ascending by owner.
inline std::vector<CandidateSet> expand_all(const SocialGraph& g, const NormalizedWeights& nw,
                                            const StrengthTable& table) {
  std::vector<CandidateSet> out;
  for (std::size_t v = 0; v < g.node_count(); ++v)
    if (g.degree(v) > 0) out.push_back(expand_candidates(g, nw, table, g.id(v)));
  return out;
}

struct ExpansionSummary {
  std::size_t owners = 0;
  std::size_t expanded_owners = 0;
  double percent_expanded = 0.0;
  double median_expansion = 0.0;
  std::size_t max_expansion = 0;
  double median_rate = 0.0;
  double mean_rate = 0.0;
  double max_rate = 0.0;
};

namespace detail {
inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}
}  // namespace detail

inline ExpansionSummary summarize_expansion(std::span<const CandidateSet> sets) {
  ExpansionSummary s;
  s.owners = sets.size();
  if (sets.empty()) return s;
  std::vector<double> counts, rates;
  for (const auto& c : sets) {
    if (!c.expanded.empty()) ++s.expanded_owners;
    counts.push_back(static_cast<double>(c.expanded.size()));
    rates.push_back(c.expansion_rate());
    s.max_expansion = std::max(s.max_expansion, c.expanded.size());
    s.max_rate = std::max(s.max_rate, c.expansion_rate());
    s.mean_rate += c.expansion_rate();
  }
  s.percent_expanded = 100.0 * static_cast<double>(s.expanded_owners) / static_cast<double>(s.owners);
  s.median_expansion = detail::median(counts);
  s.median_rate = detail::median(rates);
  s.mean_rate /= static_cast<double>(s.owners);
  return s;
}

/// Per-node availability over one cycle of hour slots (24 daily, 168 weekly).
struct PresenceSchedule {
  std::size_t slots_per_cycle = 24;
  std::map<NodeId, std::vector<std::uint8_t>> online;

  const std::vector<std::uint8_t>& at(NodeId node) const {
    auto it = online.find(node);
    if (it == online.end()) throw NotFound("no presence vector for node " + std::to_string(node));
    return it->second;
  }

  friend bool operator==(const PresenceSchedule&, const PresenceSchedule&) = default;
};

// Raised-cosine daily curve: online probability `floor` at the valley and
// `floor + amplitude` at `peak_hour`, twelve hours apart. Each node is shifted
// by a whole-hour offset drawn uniformly from [-timezone_spread, timezone_spread].
struct DiurnalParams {
  std::size_t slots = 24;
  double floor = 0.25;
  double amplitude = 0.3;
  double peak_hour = 1.0;
  int timezone_spread = 0;

  friend bool operator==(const DiurnalParams&, const DiurnalParams&) = default;
};

inline void validate(const DiurnalParams& p) {
  if (p.slots == 0) throw InvalidArgument("presence needs at least one slot");
  if (!(p.floor >= 0.0 && p.floor <= 1.0)) throw InvalidArgument("floor must be in [0, 1]");
  if (!(p.amplitude >= 0.0)) throw InvalidArgument("amplitude must be non-negative");
  if (!std::isfinite(p.peak_hour)) throw InvalidArgument("peak hour must be finite");
  if (p.timezone_spread < 0 || p.timezone_spread > 12)
    throw InvalidArgument("timezone spread must be in [0, 12]");
}

// Online probability at a local hour of day.
inline double diurnal_probability(const DiurnalParams& p, double hour) {
  const double phase = 2.0 * std::numbers::pi * (hour - p.peak_hour) / 24.0;
  return std::clamp(p.floor + p.amplitude * 0.5 * (1.0 + std::cos(phase)), 0.0, 1.0);
}

inline PresenceSchedule generate_presence(std::span<const NodeId> nodes, const DiurnalParams& p,
                                          std::uint64_t seed) {
  validate(p);
  PresenceSchedule sched;
  sched.slots_per_cycle = p.slots;
  auto tz_rng = make_rng(seed, "presence.timezone");
  auto bit_rng = make_rng(seed, "presence.online");
  std::uniform_int_distribution<int> tz(-p.timezone_spread, p.timezone_spread);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (NodeId v : nodes) {
    const int offset = tz(tz_rng);
    std::vector<std::uint8_t> bits(p.slots, 0);
    for (std::size_t s = 0; s < p.slots; ++s) {
      const double prob = diurnal_probability(p, static_cast<double>(s) - offset);
      bits[s] = unit(bit_rng) < prob ? 1 : 0;
    }
    sched.online.emplace(v, std::move(bits));
  }
  return sched;
}

/// Reads `node,slot,online` rows. Nodes in `nodes` without rows are never
/// online; rows for unknown nodes or out-of-range slots are errors.
inline PresenceSchedule read_presence(std::istream& in, std::span<const NodeId> nodes,
                                      std::size_t slots) {
  if (slots == 0) throw InvalidArgument("presence needs at least one slot");
  PresenceSchedule sched;
  sched.slots_per_cycle = slots;
  for (NodeId v : nodes) sched.online.emplace(v, std::vector<std::uint8_t>(slots, 0));
  detail::for_each_csv_row(
      in, {{"node", "slot", "online"}},
      [&](std::size_t row, const std::vector<std::string_view>& f) {
        if (f.size() != 3) throw ParseError(row, "expected 3 fields");
        NodeId node = 0;
        std::size_t slot = 0;
        int on = 0;
        if (!detail::parse_number(f[0], node)) throw ParseError(row, "bad node id");
        if (!detail::parse_number(f[1], slot) || slot >= slots) throw ParseError(row, "bad slot");
        if (!detail::parse_number(f[2], on) || (on != 0 && on != 1))
          throw ParseError(row, "online must be 0 or 1");
        auto it = sched.online.find(node);
        if (it == sched.online.end()) throw ParseError(row, "unknown node " + std::to_string(node));
        it->second[slot] = static_cast<std::uint8_t>(on);
      });
  return sched;
}

inline PresenceSchedule load_presence(const std::filesystem::path& path,
                                      std::span<const NodeId> nodes, std::size_t slots) {
  auto in = detail::open_input(path);
  return read_presence(in, nodes, slots);
}

inline void write_presence(std::ostream& out, const PresenceSchedule& sched) {
  out << "node,slot,online\n";
  for (const auto& [node, bits] : sched.online)
    for (std::size_t s = 0; s < bits.size(); ++s)
      out << node << ',' << s << ',' << int{bits[s]} << '\n';
}

enum class CandidateMode { direct_only, expanded };

inline std::string_view to_string(CandidateMode m) {
  return m == CandidateMode::direct_only ? "direct_only" : "expanded";
}

struct AvailabilityResult {
  std::vector<double> fraction;  // per slot
  std::size_t owners_counted = 0;
  std::size_t owners_without_candidates = 0;
};

/// Fraction of owners, per slot, with at least k candidates online. Owners
/// with no candidates under `mode` are left out of the denominator.
inline AvailabilityResult availability_eval(std::span<const CandidateSet> sets,
                                            const PresenceSchedule& sched, std::size_t k,
                                            CandidateMode mode) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  AvailabilityResult res;
  res.fraction.assign(sched.slots_per_cycle, 0.0);
  std::vector<std::size_t> satisfied(sched.slots_per_cycle, 0);
  for (const auto& c : sets) {
    std::vector<NodeId> members = c.direct;
    if (mode == CandidateMode::expanded)
      for (const auto& [m, e] : c.expanded) members.push_back(m);
    if (members.empty()) {
      ++res.owners_without_candidates;
      continue;
    }
    ++res.owners_counted;
    for (std::size_t s = 0; s < sched.slots_per_cycle; ++s) {
      std::size_t up = 0;
      for (NodeId m : members) up += sched.at(m)[s];
      if (up >= k) ++satisfied[s];
    }
  }
  if (res.owners_counted > 0)
    for (std::size_t s = 0; s < sched.slots_per_cycle; ++s)
      res.fraction[s] = static_cast<double>(satisfied[s]) / static_cast<double>(res.owners_counted);
  return res;
}

struct PlacementResult {
  NodeId owner = 0;
  std::vector<NodeId> chosen;
  std::vector<std::uint8_t> covered_slots;

  std::size_t replicas() const noexcept { return chosen.size(); }
  std::size_t covered_count() const {
    return static_cast<std::size_t>(std::count(covered_slots.begin(), covered_slots.end(), 1));
  }
};

/// Greedy max coverage: repeatedly take the candidate that covers the most
/// still-uncovered slots (lowest NodeId on ties) until nothing adds coverage.
inline PlacementResult greedy_placement(NodeId owner, std::span<const NodeId> candidates,
                                        const PresenceSchedule& sched) {
  if (candidates.empty()) throw InvalidArgument("greedy placement needs candidates");
  std::vector<NodeId> pool(candidates.begin(), candidates.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  PlacementResult res;
  res.owner = owner;
  res.covered_slots.assign(sched.slots_per_cycle, 0);
  std::vector<char> used(pool.size(), 0);
  for (;;) {
    std::size_t best = pool.size();
    std::size_t best_gain = 0;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (used[c]) continue;
      const auto& bits = sched.at(pool[c]);
      std::size_t gain = 0;
      for (std::size_t s = 0; s < sched.slots_per_cycle; ++s)
        gain += bits[s] && !res.covered_slots[s];
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    if (best == pool.size()) break;
    used[best] = 1;
    res.chosen.push_back(pool[best]);
    const auto& bits = sched.at(pool[best]);
    for (std::size_t s = 0; s < sched.slots_per_cycle; ++s)
      if (bits[s]) res.covered_slots[s] = 1;
  }
  return res;
}

}  // namespace sstie
