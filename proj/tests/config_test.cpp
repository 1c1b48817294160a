#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "experiment_config.hpp"

using namespace sstie;
using namespace sstie::tools;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ExperimentConfig round_trip(const ExperimentConfig& c) {
  std::stringstream s;
  write_config(s, c);
  return parse_config(s);
}

}  // namespace

TEST(Config, Defaults) {
  auto c = parse("");
  EXPECT_EQ(c, ExperimentConfig{});
  EXPECT_EQ(c.n, 2u);
  EXPECT_EQ(c.k, (std::vector<std::size_t>{1, 3, 6}));
}

TEST(Config, ParsesSections) {
  auto c = parse(R"(seed = 42
out = "results"

[graph]
model = "ba"
nodes = 150
m = 3
weight_model = "activity"
activity_sigma = 0.5

[strength]
n = 3
cap = 500

[diffusion]
p0_min = 0.1
p0_max = 0.7
p0_steps = 4
iterations = 10
cumulative = true
seed_node = 7

[f2f]
k = [2, 4]
timezone_spread = 3

[validation]
zero_policy = "drop"
network = "ba150"
)");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.out, "results");
  ASSERT_TRUE(c.generator.has_value());
  EXPECT_EQ(c.generator->model, GraphModel::barabasi_albert);
  EXPECT_EQ(c.generator->nodes, 150u);
  EXPECT_EQ(c.generator->m, 3u);
  EXPECT_EQ(c.generator->weights.model, WeightModel::activity);
  EXPECT_EQ(c.generator->weights.activity_sigma, 0.5);
  EXPECT_EQ(c.n, 3u);
  EXPECT_EQ(c.cap, 500u);
  EXPECT_EQ(*c.p0_min, 0.1);
  EXPECT_EQ(*c.p0_max, 0.7);
  EXPECT_EQ(c.p0_steps, 4u);
  EXPECT_EQ(c.iterations, 10u);
  EXPECT_TRUE(c.cumulative);
  EXPECT_EQ(*c.seed_node, 7u);
  EXPECT_EQ(c.k, (std::vector<std::size_t>{2, 4}));
  EXPECT_EQ(c.diurnal.timezone_spread, 3);
  EXPECT_EQ(c.zero_policy, "drop");
  EXPECT_EQ(c.network, "ba150");
  EXPECT_NO_THROW(validate(c));
}

TEST(Config, RoundTripsLosslessly) {
  ExperimentConfig c;
  EXPECT_EQ(round_trip(c), c);

  c.seed = 18446744073709551615ull;
  c.out = "some dir/out";
  c.graph_file = "edges.csv";
  c.n = 3;
  c.cap = 77;
  c.label = "work";
  c.p0 = 0.1 + 0.2;  // not exactly representable in short decimal
  c.p0_min = 1.0 / 3.0;
  c.p0_max = 0.9;
  c.p0_steps = 3;
  c.iterations = 5;
  c.top_fraction = 0.15;
  c.cumulative = true;
  c.stochastic = true;
  c.seed_node = 12;
  c.k = {1, 2, 9};
  c.presence_file = "presence.csv";
  c.diurnal = {168, 0.2, 0.35, 20.5, 4};
  c.validate_mode = "jc-ss2";
  c.zero_policy = "include";
  c.network = "net";
  EXPECT_EQ(round_trip(c), c);

  ExperimentConfig gen;
  gen.generator = GeneratorParams{GraphModel::erdos_renyi, 64, 0.07, 3,
                                  {WeightModel::activity, 2, 40, 0.65}};
  EXPECT_EQ(round_trip(gen), gen);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse("sed = 1\n"), ConfigError);
  EXPECT_THROW(parse("[strength]\nhops = 2\n"), ConfigError);
  EXPECT_THROW(parse("[strength]\nn = two\n"), ConfigError);
  EXPECT_THROW(parse("[diffusion]\ncumulative = maybe\n"), ConfigError);
  EXPECT_THROW(parse("[graph]\nmodel = \"lattice\"\n"), ConfigError);
  EXPECT_THROW(parse("[f2f]\nk = [1, x]\n"), ConfigError);
}

TEST(Config, Validation) {
  ExperimentConfig c;
  EXPECT_THROW(validate(c), ConfigError);  // no graph source
  c.generator = GeneratorParams{};
  c.generator->nodes = 20;
  EXPECT_NO_THROW(validate(c));
  c.graph_file = "/definitely/not/here.csv";
  EXPECT_THROW(validate(c), ConfigError);  // both sources
  c.generator.reset();
  EXPECT_THROW(validate(c), ConfigError);  // missing file
  c.graph_file = std::string(SSTIE_TEST_DATA) + "/er30.csv";
  EXPECT_NO_THROW(validate(c));

  auto bad = [&](auto mutate) {
    ExperimentConfig d = c;
    mutate(d);
    EXPECT_THROW(validate(d), ConfigError);
  };
  bad([](ExperimentConfig& d) { d.n = 0; });
  bad([](ExperimentConfig& d) { d.cap = 0; });
  bad([](ExperimentConfig& d) { d.iterations = 0; });
  bad([](ExperimentConfig& d) { d.top_fraction = 0.0; });
  bad([](ExperimentConfig& d) { d.p0_min = 0.8, d.p0_max = 0.2; });
  bad([](ExperimentConfig& d) { d.k = {}; });
  bad([](ExperimentConfig& d) { d.k = {0}; });
  bad([](ExperimentConfig& d) { d.zero_policy = "sometimes"; });
  bad([](ExperimentConfig& d) { d.validate_mode = "other"; });
  bad([](ExperimentConfig& d) { d.diurnal.floor = -0.1; });
  bad([](ExperimentConfig& d) { d.presence_file = "/no/such/presence.csv"; });
  bad([](ExperimentConfig& d) {
    d.graph_file.clear();
    d.generator = GeneratorParams{GraphModel::barabasi_albert, 3, 0.1, 5, {}};
  });
}
