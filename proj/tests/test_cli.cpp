#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "pomapf/cli.hpp"
#include "pomapf/harness.hpp"
#include "pomapf/trace.hpp"
#include "pomapf/yaml_config.hpp"

namespace pomapf {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "pomapf");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pomapf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, NoSubcommandIsUsageError) {
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitUsage);
}

TEST_F(CliTest, GenerateRoundTrip) {
  const auto yaml = path("inst.yaml");
  const auto r = invoke({"generate", "--size", "16", "--agents", "8", "--seed", "3", "--out", yaml});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto config = load_config_file(yaml);
  ASSERT_TRUE(config.map.has_value());
  ASSERT_TRUE(config.agents.has_value());
  EXPECT_EQ(config.agents->size(), 8u);

  GridConfig generated;
  generated.size = 16;
  generated.num_agents = 8;
  Environment original(generated, 3);
  Environment reloaded(config, 99);  // explicit instance ignores the seed
  EXPECT_EQ(reloaded.obstacles(), original.obstacles());
  EXPECT_EQ(reloaded.agents(), original.agents());
}

TEST_F(CliTest, GenerateRejectsBadDensity) {
  const auto r = invoke({"generate", "--size", "8", "--density", "1.0", "--agents", "1", "--out",
                         path("x.yaml")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_FALSE(fs::exists(path("x.yaml")));
}

TEST_F(CliTest, GenerateTooManyAgents) {
  const auto r = invoke({"generate", "--size", "4", "--agents", "20", "--out", path("x.yaml")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("ValidationError"), std::string::npos);
}

TEST_F(CliTest, RunWritesJsonAndTraces) {
  const auto out = path("res.json");
  const auto traces = path("traces");
  const auto r = invoke({"run", "--env", "Pogema-8x8-hard-v0", "--policy", "astar+ga+fl",
                         "--episodes", "3", "--seed", "10", "--out", out, "--trace", traces});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = read_results_json(out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].episodes, 3);
  EXPECT_EQ(rows[0].policy_name, "astar+ga+fl");

  const auto& entry = registry_lookup("Pogema-8x8-hard-v0");
  for (int i = 0; i < 3; ++i) {
    const auto file = fs::path(traces) / ("episode_" + std::to_string(i) + ".jsonl");
    ASSERT_TRUE(fs::exists(file)) << file;
    const auto trace = read_trace_file(file.string());
    const auto expected = run_episode(entry, PolicyKind::kAStarGAFL, 10 + i, 10 + i);
    EXPECT_EQ(static_cast<int>(trace.ticks.size()), expected.steps_used);
    EXPECT_EQ(trace.seed, 10u + i);
  }
}

TEST_F(CliTest, RunCsvFromConfig) {
  const auto yaml = path("cfg.yaml");
  std::ofstream(yaml) << "size: 8\ndensity: 0.2\nnum_agents: 2\nobs_radius: 3\nmax_episode_steps: 32\n";
  const auto out = path("res.csv");
  const auto r = invoke({"run", "--config", yaml, "--episodes", "2", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "config_name,policy_name,episodes,mean_isr,csr_rate,mean_steps");
  EXPECT_EQ(row.rfind("cfg,astar,2,", 0), 0u) << row;
}

TEST_F(CliTest, RunErrors) {
  EXPECT_EQ(invoke({"run", "--env", "Pogema-8x8-easy-v0", "--policy", "bogus", "--out",
                    path("r.json")})
                .code,
            cli::kExitUsage);
  EXPECT_EQ(invoke({"run", "--env", "Pogema-9x9-easy-v0", "--out", path("r.json")}).code,
            cli::kExitUsage);
  EXPECT_EQ(invoke({"run", "--out", path("r.json")}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"run", "--env", "Pogema-8x8-easy-v0", "--config", "x.yaml", "--out",
                    path("r.json")})
                .code,
            cli::kExitUsage);
  EXPECT_EQ(invoke({"run", "--config", path("missing.yaml"), "--out", path("r.json")}).code,
            cli::kExitFailure);
  EXPECT_EQ(invoke({"run", "--env", "Pogema-8x8-easy-v0", "--episodes", "0", "--out",
                    path("r.json")})
                .code,
            cli::kExitUsage);
}

TEST_F(CliTest, BenchOutputFormat) {
  const auto r = invoke({"bench", "--size", "8", "--agents", "1", "--seconds", "0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::regex line(
      R"(size=8 agents=1 seconds=([0-9.]+) agent_steps_per_sec=([0-9.]+) env_steps_per_sec=([0-9.]+)\n)");
  std::smatch m;
  ASSERT_TRUE(std::regex_match(r.out, m, line)) << r.out;
  const double agent_rate = std::stod(m[2]);
  const double env_rate = std::stod(m[3]);
  EXPECT_GT(env_rate, 0.0);
  EXPECT_NEAR(agent_rate, env_rate, env_rate * 0.05);
}

TEST_F(CliTest, RenderAsciiAndSvg) {
  const auto traces = path("traces");
  ASSERT_EQ(invoke({"run", "--env", "Pogema-8x8-easy-v0", "--episodes", "1", "--out",
                    path("r.json"), "--trace", traces})
                .code,
            0);
  const auto trace_file = (fs::path(traces) / "episode_0.jsonl").string();
  const auto trace = read_trace_file(trace_file);

  const auto ascii = invoke({"render", "--trace", trace_file});
  ASSERT_EQ(ascii.code, 0) << ascii.err;
  std::size_t frames = 1;
  for (std::size_t i = 1; i < ascii.out.size(); ++i)
    frames += ascii.out[i] == '\n' && ascii.out[i - 1] == '\n';
  EXPECT_EQ(frames, trace.ticks.size());

  const auto svg_dir = path("svg");
  const auto svg = invoke({"render", "--trace", trace_file, "--format", "svg", "--out", svg_dir});
  ASSERT_EQ(svg.code, 0) << svg.err;
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(svg_dir)) files += e.path().extension() == ".svg";
  EXPECT_EQ(files, trace.ticks.size());
  EXPECT_TRUE(fs::exists(fs::path(svg_dir) / "frame_0001.svg"));

  EXPECT_EQ(invoke({"render", "--trace", trace_file, "--format", "png"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"render", "--trace", path("none.jsonl")}).code, cli::kExitFailure);
}

}  // namespace
}  // namespace pomapf
