#pragma once

#include <cmath>
#include <ostream>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "sstie/diffusion.hpp"
#include "sstie/f2f.hpp"
#include "sstie/io.hpp"
#include "sstie/stats.hpp"
#include "sstie/strength.hpp"
#include "sstie/validation.hpp"

// CSV and JSON writers for every artifact the tools emit. Doubles are written
// in shortest round-trip form so repeated runs are byte-identical.
namespace sstie {

namespace detail {
inline nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}
}  // namespace detail

inline void write_stats_csv(std::ostream& out, const GraphStats& s) {
  out << "nodes,edges,density,clustering,assortativity,diameter,avg_path_length,"
         "min_weight,max_weight,components\n";
  out << s.node_count << ',' << s.edge_count << ',' << format_double(s.density) << ','
      << format_double(s.average_clustering_coefficient) << ','
      << format_double(s.degree_assortativity) << ',' << s.diameter << ','
      << format_double(s.average_shortest_path_length) << ',' << format_double(s.min_weight)
      << ',' << format_double(s.max_weight) << ',' << s.components << '\n';
}

inline nlohmann::ordered_json stats_json(const GraphStats& s) {
  nlohmann::ordered_json j;
  j["node_count"] = s.node_count;
  j["edge_count"] = s.edge_count;
  j["density"] = s.density;
  j["average_clustering_coefficient"] = s.average_clustering_coefficient;
  j["degree_assortativity"] = detail::number_or_null(s.degree_assortativity);
  j["diameter"] = s.diameter;
  j["average_shortest_path_length"] = s.average_shortest_path_length;
  j["weight_range"] = {s.min_weight, s.max_weight};
  j["components"] = s.components;
  return j;
}

inline void write_nw_csv(std::ostream& out, const NormalizedWeights& nw) {
  out << "src,dst,nw\n";
  for (std::size_t i = 0; i < nw.node_count(); ++i)
    for (const auto& e : nw.row(i))
      out << nw.id(i) << ',' << nw.id(e.index) << ',' << format_double(e.value) << '\n';
}

inline void write_strength_csv(std::ostream& out, const StrengthTable& t) {
  out << "src,dst,n,ss,path_count,truncated\n";
  for (const auto& [key, e] : t.entries())
    out << key.first << ',' << key.second << ',' << e.n << ',' << format_double(e.ss) << ','
        << e.path_count << ',' << (e.truncated ? 1 : 0) << '\n';
}

inline void write_series_csv(std::ostream& out, const PairedSeries& s) {
  out << "a,b," << s.label_x << ',' << s.label_y << '\n';
  for (std::size_t i = 0; i < s.size(); ++i)
    out << s.keys[i].first << ',' << s.keys[i].second << ',' << format_double(s.x[i]) << ','
        << format_double(s.y[i]) << '\n';
}

inline void write_triad_records_csv(std::ostream& out, std::span<const TriadRecord> recs) {
  out << "a,b,weight,jc,ss,n,path_count,truncated\n";
  for (const auto& r : recs)
    out << r.a << ',' << r.b << ',' << format_double(r.weight) << ',' << format_double(r.jc)
        << ',' << format_double(r.ss) << ',' << r.n << ',' << r.path_count << ','
        << (r.truncated ? 1 : 0) << '\n';
}

// Columns follow the published correlation tables.
inline void write_triad_header(std::ostream& out) {
  out << "network,zero_policy,pc_weight_jc,pc_weight_ss,pc_jc_ss,n_pairs,zero_filtered,"
         "removed_percent\n";
}

inline void write_triad_row(std::ostream& out, const std::string& network, const TriadResult& r) {
  out << network << ',' << to_string(r.policy) << ',' << format_double(r.reports[0].coefficient)
      << ',' << format_double(r.reports[1].coefficient) << ','
      << format_double(r.reports[2].coefficient) << ',' << r.reports[0].n_pairs << ','
      << (r.reports[0].zero_filtered ? 1 : 0) << ',' << format_double(100.0 * r.removed_fraction)
      << '\n';
}

inline nlohmann::ordered_json report_json(const CorrelationReport& r) {
  nlohmann::ordered_json j;
  j["x"] = r.label_x;
  j["y"] = r.label_y;
  j["coefficient"] = r.coefficient;
  j["n_pairs"] = r.n_pairs;
  j["zero_filtered"] = r.zero_filtered;
  j["removed_fraction"] = r.removed_fraction;
  return j;
}

inline void write_trace_csv(std::ostream& out, const DiffusionTrace& t) {
  out << "node,step\n";
  for (const auto& [node, step] : t.infected_at) out << node << ',' << step << '\n';
}

inline void write_probabilities_csv(std::ostream& out, const SocialGraph& g,
                                    const EdgeProbabilities& p) {
  out << "a,b,weight,probability\n";
  for (const auto& [a, b, pr] : p.list(g))
    out << a << ',' << b << ',' << format_double(*g.weight(a, b)) << ',' << format_double(pr)
        << '\n';
}

inline void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "p0,n,method,accuracy,sensitivity,specificity,defined_count\n";
  for (const auto& r : rows)
    out << format_double(r.p0) << ',' << r.n << ',' << r.method << ','
        << format_double(r.accuracy) << ',' << format_double(r.sensitivity) << ','
        << format_double(r.specificity) << ',' << r.defined_count << '\n';
}

inline void write_expansion_csv(std::ostream& out, std::span<const CandidateSet> sets) {
  out << "owner,theta,direct_count,expanded_count,expansion_rate\n";
  for (const auto& c : sets)
    out << c.owner << ',' << format_double(c.theta) << ',' << c.direct.size() << ','
        << c.expanded.size() << ',' << format_double(c.expansion_rate()) << '\n';
}

inline void write_availability_header(std::ostream& out) { out << "slot,k,mode,fraction\n"; }

inline void write_availability_rows(std::ostream& out, std::size_t k, CandidateMode mode,
                                    const AvailabilityResult& r) {
  for (std::size_t s = 0; s < r.fraction.size(); ++s)
    out << s << ',' << k << ',' << to_string(mode) << ',' << format_double(r.fraction[s]) << '\n';
}

inline void write_placement_header(std::ostream& out) {
  out << "owner,mode,candidates,replicas,covered_slots,chosen\n";
}

inline void write_placement_row(std::ostream& out, CandidateMode mode, std::size_t candidates,
                                const PlacementResult& p) {
  out << p.owner << ',' << to_string(mode) << ',' << candidates << ',' << p.replicas() << ','
      << p.covered_count() << ',';
  for (std::size_t i = 0; i < p.chosen.size(); ++i) out << (i ? ";" : "") << p.chosen[i];
  out << '\n';
}

}  // namespace sstie
