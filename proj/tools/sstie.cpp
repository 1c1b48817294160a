// Command-line front end: one subcommand per experiment step, all artifacts
// written as CSV (plus JSON mirrors where useful) under --out.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "experiment_config.hpp"
#include "sstie/sstie.hpp"

namespace fs = std::filesystem;
using namespace sstie;
using sstie::tools::ConfigError;
using sstie::tools::ExperimentConfig;

namespace {

struct Overrides {
  std::optional<std::string> graph, out, presence, zero_policy, mode, label, model, weight_model,
      network;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n, cap, p0_steps, iterations, nodes, m, slots;
  std::optional<double> p0, p0_min, p0_max, top_fraction, p, floor, amplitude, peak_hour;
  std::optional<int> weight_min, weight_max, timezone_spread;
  std::optional<NodeId> seed_node;
  std::vector<std::size_t> k;
  bool cumulative = false;
  bool stochastic = false;
  bool json = false;
};

void apply(const Overrides& o, ExperimentConfig& c) {
  if (o.graph) {
    c.graph_file = *o.graph;
    c.generator.reset();
  }
  if (o.model) {
    GeneratorParams gen = c.generator.value_or(GeneratorParams{});
    gen.model = parse_graph_model(*o.model);
    c.generator = gen;
    c.graph_file.clear();
  }
  if (c.generator) {
    auto& gen = *c.generator;
    if (o.nodes) gen.nodes = *o.nodes;
    if (o.p) gen.p = *o.p;
    if (o.m) gen.m = *o.m;
    if (o.weight_model) gen.weights.model = parse_weight_model(*o.weight_model);
    if (o.weight_min) gen.weights.min = *o.weight_min;
    if (o.weight_max) gen.weights.max = *o.weight_max;
  }
  if (o.out) c.out = *o.out;
  if (o.seed) c.seed = *o.seed;
  if (o.n) c.n = *o.n;
  if (o.cap) c.cap = *o.cap;
  if (o.label) c.label = *o.label;
  if (o.p0) c.p0 = *o.p0;
  if (o.p0_min) c.p0_min = *o.p0_min;
  if (o.p0_max) c.p0_max = *o.p0_max;
  if (o.p0_steps) c.p0_steps = *o.p0_steps;
  if (o.iterations) c.iterations = *o.iterations;
  if (o.top_fraction) c.top_fraction = *o.top_fraction;
  if (o.cumulative) c.cumulative = true;
  if (o.stochastic) c.stochastic = true;
  if (o.seed_node) c.seed_node = *o.seed_node;
  if (!o.k.empty()) c.k = o.k;
  if (o.presence) c.presence_file = *o.presence;
  if (o.slots) c.diurnal.slots = *o.slots;
  if (o.floor) c.diurnal.floor = *o.floor;
  if (o.amplitude) c.diurnal.amplitude = *o.amplitude;
  if (o.peak_hour) c.diurnal.peak_hour = *o.peak_hour;
  if (o.timezone_spread) c.diurnal.timezone_spread = *o.timezone_spread;
  if (o.mode) c.validate_mode = *o.mode;
  if (o.zero_policy) c.zero_policy = *o.zero_policy;
  if (o.network) c.network = *o.network;
}

class Runner {
 public:
  explicit Runner(ExperimentConfig cfg) : cfg_(std::move(cfg)) {}

  int run(const std::string& command) {
    fs::create_directories(cfg_.out);
    if (command == "gen-graph") return gen_graph();
    if (command == "gen-presence") return gen_presence();
    if (command == "stats") return stats();
    if (command == "nw") return nw();
    if (command == "ss") return ss();
    if (command == "validate") return validate();
    if (command == "diffuse") return diffuse();
    if (command == "predict") return predict();
    if (command == "sweep") return sweep();
    if (command == "f2f-expand") return f2f_expand();
    if (command == "f2f-availability") return f2f_availability();
    if (command == "f2f-place") return f2f_place();
    throw ConfigError("unknown subcommand " + command);
  }

  bool json = false;

 private:
  const SocialGraph& graph() {
    if (!graph_) {
      graph_ = cfg_.generator ? generate_graph(*cfg_.generator, cfg_.seed)
                              : load_graph(cfg_.graph_file);
      if (!cfg_.label.empty()) graph_ = label_subgraph(*graph_, cfg_.label);
    }
    return *graph_;
  }

  const NormalizedWeights& weights() {
    if (!nw_) nw_ = normalized_weights(graph());
    return *nw_;
  }

  const StrengthTable& table() {
    if (!table_) table_ = strength_table(graph(), weights(), cfg_.n, cfg_.cap);
    return *table_;
  }

  std::ofstream open(const std::string& name) {
    auto path = fs::path(cfg_.out) / name;
    written_.push_back(path.string());
    return sstie::detail::open_output(path);
  }

  int done(const std::string& summary) {
    std::cout << summary << " ->";
    for (const auto& w : written_) std::cout << ' ' << w;
    std::cout << '\n';
    return 0;
  }

  PresenceSchedule presence() {
    if (!cfg_.presence_file.empty())
      return load_presence(cfg_.presence_file, graph().nodes(), cfg_.diurnal.slots);
    return generate_presence(graph().nodes(), cfg_.diurnal, substream_seed(cfg_.seed, "cli.presence"));
  }

  std::vector<double> p0_values() {
    const auto probs = edge_probabilities(graph());
    const double lo = cfg_.p0_min.value_or(
        probability_quantile(graph(), probs, tools::kDefaultP0LowQuantile));
    const double hi = cfg_.p0_max.value_or(
        probability_quantile(graph(), probs, tools::kDefaultP0HighQuantile));
    return linspace(lo, std::max(lo, hi), cfg_.p0_steps);
  }

  double single_p0() {
    if (cfg_.p0) return *cfg_.p0;
    return probability_quantile(graph(), edge_probabilities(graph()), tools::kDefaultP0LowQuantile);
  }

  NodeId seed_node() {
    if (cfg_.seed_node) return *cfg_.seed_node;
    auto rng = make_rng(cfg_.seed, "cli.seed_node");
    return draw_node(graph(), rng);
  }

  int gen_graph() {
    if (!cfg_.generator) throw ConfigError("gen-graph needs a generator model (--model)");
    auto out = open("graph.csv");
    write_graph(out, graph());
    return done("generated " + std::to_string(graph().node_count()) + " nodes, " +
                std::to_string(graph().edge_count()) + " edges");
  }

  int gen_presence() {
    auto sched = presence();
    auto out = open("presence.csv");
    write_presence(out, sched);
    return done("presence for " + std::to_string(sched.online.size()) + " nodes over " +
                std::to_string(sched.slots_per_cycle) + " slots");
  }

  int stats() {
    auto s = graph_stats(graph());
    {
      auto out = open("stats.csv");
      write_stats_csv(out, s);
    }
    if (json) {
      auto out = open("stats.json");
      out << stats_json(s).dump(2) << '\n';
    }
    return done("stats: " + std::to_string(s.node_count) + " nodes, " +
                std::to_string(s.edge_count) + " edges, diameter " + std::to_string(s.diameter));
  }

  int nw() {
    auto out = open("nw.csv");
    write_nw_csv(out, weights());
    return done("normalized weights for " + std::to_string(graph().node_count()) + " nodes");
  }

  int ss() {
    auto out = open("ss_n" + std::to_string(cfg_.n) + ".csv");
    write_strength_csv(out, table());
    std::size_t truncated = 0;
    for (const auto& [k, e] : table().entries()) truncated += e.truncated;
    return done("strength table: " + std::to_string(table().size()) + " pairs at n=" +
                std::to_string(cfg_.n) + ", " + std::to_string(truncated) + " truncated");
  }

  int validate() {
    if (cfg_.validate_mode == "jc-ss2") {
      auto series = jc_ss2_series(graph(), weights(), cfg_.cap);
      {
        auto out = open("jc_ss2_series.csv");
        write_series_csv(out, series);
      }
      if (series.size() < 2) throw InvalidArgument("fewer than two pairs at distance 2");
      CorrelationReport r{"jc", "ss2", pearson(series), series.size(), false, 0.0};
      {
        auto out = open("jc_ss2.csv");
        out << "network,pc_jc_ss2,n_pairs\n"
            << cfg_.network << ',' << format_double(r.coefficient) << ',' << r.n_pairs << '\n';
      }
      if (json) {
        auto out = open("jc_ss2.json");
        out << report_json(r).dump(2) << '\n';
      }
      return done("PC(JC, SS2) = " + format_double(r.coefficient));
    }

    auto records = triad_records(graph(), cfg_.cap);
    {
      auto out = open("triad_records.csv");
      write_triad_records_csv(out, records);
    }
    std::vector<ZeroPolicy> policies;
    if (cfg_.zero_policy != "drop") policies.push_back(ZeroPolicy::include_zeros);
    if (cfg_.zero_policy != "include") policies.push_back(ZeroPolicy::drop_zeros);
    std::vector<TriadResult> results;
    for (auto p : policies) results.push_back(triad_correlations(records, p));
    {
      auto out = open("triad.csv");
      write_triad_header(out);
      for (const auto& r : results) write_triad_row(out, cfg_.network, r);
    }
    if (json) {
      auto out = open("triad.json");
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& r : results) {
        nlohmann::ordered_json row;
        row["zero_policy"] = to_string(r.policy);
        for (const auto& rep : r.reports) row["reports"].push_back(report_json(rep));
        j.push_back(row);
      }
      out << j.dump(2) << '\n';
    }
    return done("triad correlations over " + std::to_string(records.size()) + " edges");
  }

  DiffusionConfig diffusion_config() {
    DiffusionConfig dc;
    dc.p0 = single_p0();
    dc.seed_node = seed_node();
    dc.rng_seed = substream_seed(cfg_.seed, "cli.diffusion");
    dc.mode = cfg_.stochastic ? SpreadMode::stochastic : SpreadMode::threshold;
    return dc;
  }

  int diffuse() {
    const auto probs = edge_probabilities(graph());
    const auto dc = diffusion_config();
    const auto trace = simulate_si(graph(), probs, dc);
    {
      auto out = open("probabilities.csv");
      write_probabilities_csv(out, graph(), probs);
    }
    {
      auto out = open("trace.csv");
      write_trace_csv(out, trace);
    }
    return done("diffusion from " + std::to_string(trace.seed) + " at p0=" + format_double(dc.p0) +
                ": " + std::to_string(trace.infected_at.size()) + " infected");
  }

  int predict() {
    const auto dc = diffusion_config();
    const NodeId seed = *dc.seed_node;
    const auto trace = simulate_si(graph(), dc);
    const auto population = baseline_predict(graph(), seed, cfg_.n);
    const auto predicted = predict_infected_at_n(table(), seed, cfg_.top_fraction);
    const auto rule = cfg_.cumulative ? ActualRule::cumulative : ActualRule::exact;
    auto [outcome, metrics] = evaluate_prediction(trace, predicted, population, cfg_.n, rule);
    auto [base_outcome, base_metrics] =
        evaluate_prediction(trace, population, population, cfg_.n, rule);
    {
      auto out = open("predict.csv");
      out << "node,predicted,actual\n";
      for (NodeId m : outcome.population)
        out << m << ','
            << std::binary_search(outcome.predicted.begin(), outcome.predicted.end(), m) << ','
            << std::binary_search(outcome.actual.begin(), outcome.actual.end(), m) << '\n';
    }
    {
      auto out = open("predict_metrics.csv");
      out << "seed,p0,n,method,tp,fp,tn,fn,accuracy,sensitivity,specificity\n";
      auto row = [&](const char* method, const PredictionOutcome& o, const EvalMetrics& m) {
        out << seed << ',' << format_double(dc.p0) << ',' << cfg_.n << ',' << method << ','
            << o.counts.tp << ',' << o.counts.fp << ',' << o.counts.tn << ',' << o.counts.fn
            << ',' << format_double(m.accuracy) << ','
            << format_double(m.sensitivity.value_or(std::nan(""))) << ','
            << format_double(m.specificity.value_or(std::nan(""))) << '\n';
      };
      row(kPredictorMethod, outcome, metrics);
      row(kBaselineMethod, base_outcome, base_metrics);
    }
    return done("prediction for seed " + std::to_string(seed) + ": accuracy " +
                format_double(metrics.accuracy));
  }

  int sweep() {
    SweepConfig sc;
    sc.p0_values = p0_values();
    sc.n = cfg_.n;
    sc.iterations = cfg_.iterations;
    sc.rng_seed = substream_seed(cfg_.seed, "cli.sweep");
    sc.top_fraction = cfg_.top_fraction;
    sc.rule = cfg_.cumulative ? ActualRule::cumulative : ActualRule::exact;
    sc.mode = cfg_.stochastic ? SpreadMode::stochastic : SpreadMode::threshold;
    sc.cap = cfg_.cap;
    sc.seed_node = cfg_.seed_node;
    auto rows = sweep_experiment(graph(), table(), sc);
    auto out = open("sweep.csv");
    write_sweep_csv(out, rows);
    return done("sweep: " + std::to_string(sc.p0_values.size()) + " thresholds x " +
                std::to_string(sc.iterations) + " iterations");
  }

  std::vector<CandidateSet> candidates() { return expand_all(graph(), weights(), table()); }

  int f2f_expand() {
    auto sets = candidates();
    auto summary = summarize_expansion(sets);
    {
      auto out = open("f2f_expand_n" + std::to_string(cfg_.n) + ".csv");
      write_expansion_csv(out, sets);
    }
    if (json) {
      auto out = open("f2f_expand_n" + std::to_string(cfg_.n) + ".json");
      nlohmann::ordered_json j;
      j["n"] = cfg_.n;
      j["owners"] = summary.owners;
      j["percent_expanded"] = summary.percent_expanded;
      j["expansion_median"] = summary.median_expansion;
      j["expansion_max"] = summary.max_expansion;
      j["rate_median"] = summary.median_rate;
      j["rate_mean"] = summary.mean_rate;
      j["rate_max"] = summary.max_rate;
      out << j.dump(2) << '\n';
    }
    return done(format_double(summary.percent_expanded) + "% of owners expanded at n=" +
                std::to_string(cfg_.n));
  }

  int f2f_availability() {
    auto sets = candidates();
    auto sched = presence();
    auto out = open("availability.csv");
    write_availability_header(out);
    std::size_t without = 0;
    for (auto k : cfg_.k)
      for (auto mode : {CandidateMode::direct_only, CandidateMode::expanded}) {
        auto r = availability_eval(sets, sched, k, mode);
        write_availability_rows(out, k, mode, r);
        without = r.owners_without_candidates;
      }
    return done("availability for " + std::to_string(sets.size()) + " owners (" +
                std::to_string(without) + " without candidates)");
  }

  int f2f_place() {
    auto sets = candidates();
    auto sched = presence();
    auto out = open("placement.csv");
    write_placement_header(out);
    for (const auto& c : sets)
      for (auto mode : {CandidateMode::direct_only, CandidateMode::expanded}) {
        std::vector<NodeId> pool = c.direct;
        if (mode == CandidateMode::expanded)
          for (const auto& [m, e] : c.expanded) pool.push_back(m);
        write_placement_row(out, mode, pool.size(), greedy_placement(c.owner, pool, sched));
      }
    return done("placement for " + std::to_string(sets.size()) + " owners");
  }

  ExperimentConfig cfg_;
  std::optional<SocialGraph> graph_;
  std::optional<NormalizedWeights> nw_;
  std::optional<StrengthTable> table_;
  std::vector<std::string> written_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indirect-tie social strength analytics"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  bool write_effective_config = false;
  Overrides o;
  app.add_option("--config", config_path, "TOML experiment config")->check(CLI::ExistingFile);
  app.add_option("--graph", o.graph, "edge-list CSV (src,dst,weight[,label])");
  app.add_option("--seed", o.seed, "global random seed");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--n", o.n, "hop distance");
  app.add_option("--cap", o.cap, "max shortest paths per pair");
  app.add_option("--label", o.label, "restrict to one edge label");
  app.add_option("--p0", o.p0, "single spreading threshold");
  app.add_option("--p0-min", o.p0_min, "sweep threshold lower bound");
  app.add_option("--p0-max", o.p0_max, "sweep threshold upper bound");
  app.add_option("--p0-steps", o.p0_steps, "sweep threshold count");
  app.add_option("--iterations", o.iterations, "sweep iterations per threshold");
  app.add_option("--top-fraction", o.top_fraction, "mutual rank cut-off");
  app.add_option("--seed-node", o.seed_node, "fixed diffusion seed node");
  app.add_flag("--cumulative", o.cumulative, "count infections at steps <= n as positives");
  app.add_flag("--stochastic", o.stochastic, "sample transmissions instead of thresholding");
  app.add_option("--k", o.k, "required online candidates (repeatable)");
  app.add_option("--presence", o.presence, "presence CSV (node,slot,online)");
  app.add_option("--slots", o.slots, "slots per presence cycle");
  app.add_option("--floor", o.floor, "diurnal minimum online probability");
  app.add_option("--amplitude", o.amplitude, "diurnal peak above the floor");
  app.add_option("--peak-hour", o.peak_hour, "diurnal peak hour");
  app.add_option("--timezone-spread", o.timezone_spread, "max per-node hour offset");
  app.add_option("--zero-policy", o.zero_policy, "include | drop | both");
  app.add_option("--mode", o.mode, "validation mode: triad | jc-ss2");
  app.add_option("--network", o.network, "network name in validation tables");
  app.add_option("--model", o.model, "generator: erdos_renyi | barabasi_albert | weighted_complete");
  app.add_option("--nodes", o.nodes, "generator node count");
  app.add_option("--p", o.p, "erdos_renyi edge probability");
  app.add_option("--m", o.m, "barabasi_albert edges per new node");
  app.add_option("--weight-model", o.weight_model, "uniform | activity");
  app.add_option("--weight-min", o.weight_min, "minimum generated weight");
  app.add_option("--weight-max", o.weight_max, "maximum generated weight");
  app.add_flag("--json", o.json, "also write JSON mirrors");
  app.add_flag("--write-config", write_effective_config, "save the effective config to --out");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"stats", "graph statistics"},
      {"nw", "normalized direct weights"},
      {"ss", "social strength table at distance n"},
      {"validate", "Jaccard / interaction-count correlations"},
      {"diffuse", "single threshold diffusion trace"},
      {"predict", "rank-based prediction for one seed"},
      {"sweep", "prediction vs baseline over a p0 range"},
      {"f2f-expand", "candidate set expansion"},
      {"f2f-availability", "per-slot storage availability"},
      {"f2f-place", "greedy replica placement"},
      {"gen-graph", "synthetic graph"},
      {"gen-presence", "synthetic presence schedule"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = tools::load_config(config_path);
    apply(o, cfg);
    tools::validate(cfg);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  try {
    Runner runner(cfg);
    runner.json = o.json;
    if (write_effective_config) {
      fs::create_directories(cfg.out);
      auto out = sstie::detail::open_output(fs::path(cfg.out) / "config.toml");
      tools::write_config(out, cfg);
    }
    return runner.run(command);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
