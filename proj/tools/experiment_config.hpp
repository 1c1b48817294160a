#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sstie/diffusion.hpp"
#include "sstie/f2f.hpp"
#include "sstie/generate.hpp"
#include "sstie/io.hpp"
#include "sstie/validation.hpp"

namespace sstie::tools {

// Raised for malformed or inconsistent configuration (exit code 1).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Everything one experiment run needs. Serialized as flat TOML: top-level
/// `seed` and `out`, then [graph], [strength], [diffusion], [f2f] and
/// [validation] sections.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::string out = "out";

  // graph: either an edge-list file or a generator spec
  std::string graph_file;
  std::optional<GeneratorParams> generator;

  // strength
  std::size_t n = 2;
  std::size_t cap = kDefaultPathCap;
  std::string label;  // empty: all labels

  // diffusion; unset p0 bounds default to quantiles of the edge probabilities
  std::optional<double> p0;
  std::optional<double> p0_min;
  std::optional<double> p0_max;
  std::size_t p0_steps = 10;
  std::size_t iterations = 100;
  double top_fraction = 0.10;
  bool cumulative = false;
  bool stochastic = false;
  std::optional<NodeId> seed_node;

  // f2f
  std::vector<std::size_t> k = {1, 3, 6};
  std::string presence_file;
  DiurnalParams diurnal;

  // validation
  std::string validate_mode = "triad";  // triad | jc-ss2
  std::string zero_policy = "both";     // include | drop | both
  std::string network = "graph";

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Quantiles of the edge probability distribution used when no p0 bounds are
// given: thresholds below the lower one leave diffusion near complete and
// thresholds above the upper one leave almost nothing.
inline constexpr double kDefaultP0LowQuantile = 0.50;
inline constexpr double kDefaultP0HighQuantile = 0.94;

inline void validate(const ExperimentConfig& c) {
  if (c.graph_file.empty() == !c.generator.has_value())
    throw ConfigError("exactly one of graph file or graph generator must be given");
  if (!c.graph_file.empty() && !std::filesystem::exists(c.graph_file))
    throw ConfigError("graph file '" + c.graph_file + "' does not exist");
  if (!c.presence_file.empty() && !std::filesystem::exists(c.presence_file))
    throw ConfigError("presence file '" + c.presence_file + "' does not exist");
  try {
    if (c.generator) sstie::validate(*c.generator);
    sstie::validate(c.diurnal);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (c.n < 1) throw ConfigError("n must be at least 1");
  if (c.cap < 1) throw ConfigError("cap must be at least 1");
  if (c.p0_steps < 1) throw ConfigError("p0_steps must be at least 1");
  if (c.iterations < 1) throw ConfigError("iterations must be at least 1");
  if (!(c.top_fraction > 0.0 && c.top_fraction <= 1.0))
    throw ConfigError("top_fraction must be in (0, 1]");
  if (c.p0_min && c.p0_max && *c.p0_min > *c.p0_max) throw ConfigError("p0_min exceeds p0_max");
  if (c.k.empty()) throw ConfigError("k list is empty");
  for (auto k : c.k)
    if (k < 1) throw ConfigError("every k must be at least 1");
  if (c.validate_mode != "triad" && c.validate_mode != "jc-ss2")
    throw ConfigError("validation mode must be triad or jc-ss2");
  if (c.zero_policy != "include" && c.zero_policy != "drop" && c.zero_policy != "both")
    throw ConfigError("zero policy must be include, drop or both");
}

namespace detail {

inline std::string quoted(const std::string& s) { return '"' + s + '"'; }

template <typename T>
T convert(const CLI::ConfigItem& item) {
  if (item.inputs.size() != 1) throw ConfigError("key '" + item.name + "' expects one value");
  T value{};
  if constexpr (std::is_same_v<T, std::string>) {
    value = item.inputs.front();
  } else if constexpr (std::is_same_v<T, bool>) {
    const auto& s = item.inputs.front();
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ConfigError("key '" + item.name + "' expects true or false");
  } else {
    if (!sstie::detail::parse_number(item.inputs.front(), value))
      throw ConfigError("key '" + item.name + "' has a bad value '" + item.inputs.front() + "'");
  }
  return value;
}

}  // namespace detail

inline ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig c;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_config(in);
  } catch (const CLI::Error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  using detail::convert;
  GeneratorParams gen;
  bool any_gen = false;
  for (const auto& it : items) {
    if (it.name == "++" || it.name == "--") continue;
    const std::string section = it.parents.empty() ? "" : it.parents.front();
    const std::string key = section.empty() ? it.name : section + "." + it.name;
    if (key == "seed") c.seed = convert<std::uint64_t>(it);
    else if (key == "out") c.out = convert<std::string>(it);
    else if (key == "graph.file") c.graph_file = convert<std::string>(it);
    else if (key == "graph.model") {
      try {
        gen.model = parse_graph_model(convert<std::string>(it));
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
      any_gen = true;
    } else if (key == "graph.nodes") gen.nodes = convert<std::size_t>(it);
    else if (key == "graph.p") gen.p = convert<double>(it);
    else if (key == "graph.m") gen.m = convert<std::size_t>(it);
    else if (key == "graph.weight_model") {
      try {
        gen.weights.model = parse_weight_model(convert<std::string>(it));
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "graph.weight_min") gen.weights.min = convert<int>(it);
    else if (key == "graph.weight_max") gen.weights.max = convert<int>(it);
    else if (key == "graph.activity_sigma") gen.weights.activity_sigma = convert<double>(it);
    else if (key == "strength.n") c.n = convert<std::size_t>(it);
    else if (key == "strength.cap") c.cap = convert<std::size_t>(it);
    else if (key == "strength.label") c.label = convert<std::string>(it);
    else if (key == "diffusion.p0") c.p0 = convert<double>(it);
    else if (key == "diffusion.p0_min") c.p0_min = convert<double>(it);
    else if (key == "diffusion.p0_max") c.p0_max = convert<double>(it);
    else if (key == "diffusion.p0_steps") c.p0_steps = convert<std::size_t>(it);
    else if (key == "diffusion.iterations") c.iterations = convert<std::size_t>(it);
    else if (key == "diffusion.top_fraction") c.top_fraction = convert<double>(it);
    else if (key == "diffusion.cumulative") c.cumulative = convert<bool>(it);
    else if (key == "diffusion.stochastic") c.stochastic = convert<bool>(it);
    else if (key == "diffusion.seed_node") c.seed_node = convert<NodeId>(it);
    else if (key == "f2f.k") {
      c.k.clear();
      for (const auto& s : it.inputs) {
        std::size_t v = 0;
        if (!sstie::detail::parse_number(std::string_view(s), v))
          throw ConfigError("f2f.k has a bad value '" + s + "'");
        c.k.push_back(v);
      }
    } else if (key == "f2f.presence") c.presence_file = convert<std::string>(it);
    else if (key == "f2f.slots") c.diurnal.slots = convert<std::size_t>(it);
    else if (key == "f2f.floor") c.diurnal.floor = convert<double>(it);
    else if (key == "f2f.amplitude") c.diurnal.amplitude = convert<double>(it);
    else if (key == "f2f.peak_hour") c.diurnal.peak_hour = convert<double>(it);
    else if (key == "f2f.timezone_spread") c.diurnal.timezone_spread = convert<int>(it);
    else if (key == "validation.mode") c.validate_mode = convert<std::string>(it);
    else if (key == "validation.zero_policy") c.zero_policy = convert<std::string>(it);
    else if (key == "validation.network") c.network = convert<std::string>(it);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  if (any_gen) c.generator = gen;
  return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  return parse_config(in);
}

inline void write_config(std::ostream& out, const ExperimentConfig& c) {
  using detail::quoted;
  auto num = [](double v) { return format_double(v); };
  out << "seed = " << c.seed << '\n';
  out << "out = " << quoted(c.out) << "\n\n[graph]\n";
  if (!c.graph_file.empty()) out << "file = " << quoted(c.graph_file) << '\n';
  if (c.generator) {
    const auto& g = *c.generator;
    out << "model = " << quoted(std::string(to_string(g.model))) << '\n'
        << "nodes = " << g.nodes << '\n'
        << "p = " << num(g.p) << '\n'
        << "m = " << g.m << '\n'
        << "weight_model = " << quoted(std::string(to_string(g.weights.model))) << '\n'
        << "weight_min = " << g.weights.min << '\n'
        << "weight_max = " << g.weights.max << '\n'
        << "activity_sigma = " << num(g.weights.activity_sigma) << '\n';
  }
  out << "\n[strength]\nn = " << c.n << "\ncap = " << c.cap << '\n';
  if (!c.label.empty()) out << "label = " << quoted(c.label) << '\n';
  out << "\n[diffusion]\n";
  if (c.p0) out << "p0 = " << num(*c.p0) << '\n';
  if (c.p0_min) out << "p0_min = " << num(*c.p0_min) << '\n';
  if (c.p0_max) out << "p0_max = " << num(*c.p0_max) << '\n';
  out << "p0_steps = " << c.p0_steps << '\n'
      << "iterations = " << c.iterations << '\n'
      << "top_fraction = " << num(c.top_fraction) << '\n'
      << "cumulative = " << (c.cumulative ? "true" : "false") << '\n'
      << "stochastic = " << (c.stochastic ? "true" : "false") << '\n';
  if (c.seed_node) out << "seed_node = " << *c.seed_node << '\n';
  out << "\n[f2f]\nk = [";
  for (std::size_t i = 0; i < c.k.size(); ++i) out << (i ? ", " : "") << c.k[i];
  out << "]\n";
  if (!c.presence_file.empty()) out << "presence = " << quoted(c.presence_file) << '\n';
  out << "slots = " << c.diurnal.slots << '\n'
      << "floor = " << num(c.diurnal.floor) << '\n'
      << "amplitude = " << num(c.diurnal.amplitude) << '\n'
      << "peak_hour = " << num(c.diurnal.peak_hour) << '\n'
      << "timezone_spread = " << c.diurnal.timezone_spread << '\n';
  out << "\n[validation]\nmode = " << quoted(c.validate_mode) << '\n'
      << "zero_policy = " << quoted(c.zero_policy) << '\n'
      << "network = " << quoted(c.network) << '\n';
}

}  // namespace sstie::tools
