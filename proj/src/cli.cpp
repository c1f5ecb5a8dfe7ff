#include "pomapf/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "pomapf/dynamics.hpp"
#include "pomapf/error.hpp"
#include "pomapf/harness.hpp"
#include "pomapf/mapgen.hpp"
#include "pomapf/render.hpp"
#include "pomapf/trace.hpp"
#include "pomapf/yaml_config.hpp"

namespace pomapf::cli {

namespace {

namespace fs = std::filesystem;

struct GenerateArgs {
  int size = 8;
  double density = 0.3;
  int agents = 1;
  std::uint64_t seed = 0;
  std::string out;
};

struct RunArgs {
  std::string env;
  std::string config;
  std::string policy = "astar";
  int episodes = 50;
  std::uint64_t seed = 0;
  std::string out;
  std::string trace;
};

struct BenchArgs {
  int size = 64;
  int agents = 80;
  double seconds = 5.0;
};

struct RenderArgs {
  std::string trace;
  std::string format = "ascii";
  std::string out;
};

const CLI::Validator kDensityRange(
    [](std::string& value) -> std::string {
      double d = 0.0;
      try {
        d = std::stod(value);
      } catch (const std::exception&) {
        return "density must be a number";
      }
      if (!(d >= 0.0 && d < 1.0)) return "density must be in [0, 1)";
      return {};
    },
    "[0,1)");

int cmd_generate(const GenerateArgs& args, std::ostream& out) {
  GridConfig config;
  config.size = args.size;
  config.density = args.density;
  config.num_agents = args.agents;
  config.seed = args.seed;
  if (auto report = validate_config(config); !report.ok()) {
    throw Error(ErrorCode::kValidation, report.summary());
  }
  const auto instance = generate_instance(config, args.seed);
  config.map = render_map(instance.obstacles);
  config.agents = instance.agents;

  std::ofstream file(args.out);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + args.out);
  file << dump_config(config);
  if (!file) throw Error(ErrorCode::kIo, "write failed for " + args.out);
  out << "wrote " << args.out << '\n';
  return kExitOk;
}

int cmd_run(const RunArgs& args, std::ostream& out) {
  const PolicyKind policy = parse_policy_kind(args.policy);
  GridConfig config;
  std::string name;
  if (!args.env.empty()) {
    const auto& entry = registry_lookup(args.env);
    config = entry.to_config();
    name = entry.name;
  } else {
    config = load_config_file(args.config);
    name = fs::path(args.config).stem().string();
  }

  EvaluateOptions options;
  if (!args.trace.empty()) {
    std::error_code ec;
    fs::create_directories(args.trace, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create trace directory " + args.trace);
    options.trace_prefix = (fs::path(args.trace) / "episode_").string();
  }
  const auto episodes = run_episodes(config, name, policy, args.episodes, args.seed, options);
  const auto result = aggregate(episodes);

  const auto format =
      fs::path(args.out).extension() == ".csv" ? ResultFormat::kCsv : ResultFormat::kJson;
  write_results(std::span(&result, 1), args.out, format);
  out << "config=" << result.config_name << " policy=" << result.policy_name
      << " episodes=" << result.episodes << " csr_rate=" << result.csr_rate
      << " mean_isr=" << result.mean_isr << " mean_steps=" << result.mean_steps << '\n';
  return kExitOk;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  const auto r = throughput_bench(args.size, args.agents, args.seconds);
  out << std::fixed << std::setprecision(1) << "size=" << args.size << " agents=" << args.agents
      << " seconds=" << r.seconds << " agent_steps_per_sec=" << r.agent_steps_per_second
      << " env_steps_per_sec=" << r.env_steps_per_second << '\n';
  return kExitOk;
}

int cmd_render(const RenderArgs& args, std::ostream& out) {
  const auto trace = read_trace_file(args.trace);
  if (args.format == "ascii") {
    const auto text = render_ascii(trace);
    if (args.out.empty() || args.out == "-") {
      out << text;
      return kExitOk;
    }
    std::ofstream file(args.out);
    if (!file) throw Error(ErrorCode::kIo, "cannot write " + args.out);
    file << text;
    return kExitOk;
  }
  if (args.out.empty()) throw Error(ErrorCode::kInvalidArgument, "--out is required for svg");
  std::error_code ec;
  fs::create_directories(args.out, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + args.out);
  for (std::size_t t = 0; t < trace.ticks.size(); ++t) {
    std::ostringstream name;
    name << "frame_" << std::setw(4) << std::setfill('0') << trace.ticks[t].tick << ".svg";
    std::ofstream file(fs::path(args.out) / name.str());
    if (!file) throw Error(ErrorCode::kIo, "cannot write frame " + name.str());
    file << render_svg_frame(trace, t);
  }
  out << "wrote " << trace.ticks.size() << " frames to " << args.out << '\n';
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kName:
    case ErrorCode::kValidation:
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partially observable multi-agent pathfinding engine", "pomapf"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a self-contained YAML instance");
  generate->add_option("--size", gen.size, "Grid side length")->required();
  generate->add_option("--density", gen.density, "Obstacle fraction in [0,1)")
      ->check(kDensityRange);
  generate->add_option("--agents", gen.agents, "Number of agents")->required();
  generate->add_option("--seed", gen.seed, "Generation seed");
  generate->add_option("--out", gen.out, "Output YAML path")->required();

  RunArgs runa;
  auto* run_cmd = app.add_subcommand("run", "Evaluate a policy over seeded episodes");
  auto* env_opt = run_cmd->add_option("--env", runa.env, "Builtin configuration name");
  auto* config_opt = run_cmd->add_option("--config", runa.config, "YAML config path");
  env_opt->excludes(config_opt);
  run_cmd->add_option("--policy", runa.policy, "astar, astar+ga, astar+fl, astar+ga+fl or random");
  run_cmd->add_option("--episodes", runa.episodes, "Episodes (seeds seed..seed+n-1)")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", runa.seed, "Base seed");
  run_cmd->add_option("--out", runa.out, "Results path (.json or .csv)")->required();
  run_cmd->add_option("--trace", runa.trace, "Directory for per-episode traces");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Random-policy throughput");
  bench_cmd->add_option("--size", bench.size, "Grid side length")->check(CLI::Range(2, 4096));
  bench_cmd->add_option("--agents", bench.agents, "Number of agents")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seconds", bench.seconds, "Measurement window")
      ->check(CLI::PositiveNumber);

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Render a trace as text or SVG frames");
  render_cmd->add_option("--trace", render.trace, "Trace file")->required();
  render_cmd->add_option("--format", render.format, "ascii or svg")
      ->check(CLI::IsMember({"ascii", "svg"}));
  render_cmd->add_option("--out", render.out, "Output file (ascii) or directory (svg)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (run_cmd->parsed() && runa.env.empty() && runa.config.empty()) {
      throw CLI::ValidationError("run", "one of --env or --config is required");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (run_cmd->parsed()) return cmd_run(runa, out);
    if (bench_cmd->parsed()) return cmd_bench(bench, out);
    if (render_cmd->parsed()) return cmd_render(render, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace pomapf::cli
