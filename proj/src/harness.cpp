#include "pomapf/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "pomapf/dynamics.hpp"
#include "pomapf/error.hpp"
#include "pomapf/observation.hpp"
#include "pomapf/trace.hpp"

namespace pomapf {

namespace {

using Clock = std::chrono::steady_clock;

const std::array<BenchmarkEntry, 16> kRegistry = {{
    {"Pogema-8x8-easy-v0", 8, 0.3, 1, 5, 64},
    {"Pogema-8x8-normal-v0", 8, 0.3, 2, 5, 64},
    {"Pogema-8x8-hard-v0", 8, 0.3, 4, 5, 64},
    {"Pogema-8x8-extra-hard-v0", 8, 0.3, 8, 5, 64},
    {"Pogema-16x16-easy-v0", 16, 0.3, 4, 5, 128},
    {"Pogema-16x16-normal-v0", 16, 0.3, 8, 5, 128},
    {"Pogema-16x16-hard-v0", 16, 0.3, 16, 5, 128},
    {"Pogema-16x16-extra-hard-v0", 16, 0.3, 32, 5, 128},
    {"Pogema-32x32-easy-v0", 32, 0.3, 16, 5, 256},
    {"Pogema-32x32-normal-v0", 32, 0.3, 32, 5, 256},
    {"Pogema-32x32-hard-v0", 32, 0.3, 64, 5, 256},
    {"Pogema-32x32-extra-hard-v0", 32, 0.3, 128, 5, 256},
    {"Pogema-64x64-easy-v0", 64, 0.3, 64, 5, 512},
    {"Pogema-64x64-normal-v0", 64, 0.3, 128, 5, 512},
    {"Pogema-64x64-hard-v0", 64, 0.3, 256, 5, 512},
    {"Pogema-64x64-extra-hard-v0", 64, 0.3, 512, 5, 512},
}};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

}  // namespace

GridConfig BenchmarkEntry::to_config() const {
  GridConfig config;
  config.size = size;
  config.density = density;
  config.num_agents = num_agents;
  config.obs_radius = obs_radius;
  config.max_episode_steps = max_episode_steps;
  return config;
}

std::span<const BenchmarkEntry> registry() { return kRegistry; }

const BenchmarkEntry& registry_lookup(std::string_view name) {
  for (const auto& entry : kRegistry) {
    if (entry.name == name) return entry;
  }
  std::string valid;
  for (const auto& entry : kRegistry) valid += "\n  " + entry.name;
  throw Error(ErrorCode::kName, "unknown environment '" + std::string(name) + "'; valid names:" + valid);
}

bool EpisodeResult::same_outcome(const EpisodeResult& other) const {
  return config_name == other.config_name && seed == other.seed &&
         policy_seed == other.policy_seed && policy_name == other.policy_name &&
         isr == other.isr && csr == other.csr && steps_used == other.steps_used;
}

EpisodeResult run_episode(const GridConfig& config, std::string_view config_name, PolicyKind policy,
                          std::uint64_t env_seed, std::uint64_t policy_seed,
                          const EpisodeOptions& options) {
  const auto start = Clock::now();
  Environment env(config, env_seed);
  auto memories = make_memories(env.num_agents(), env.rows(), env.cols(), policy_seed);
  PathPlanner planner;
  std::vector<Observation> observations;
  std::vector<Action> actions(env.num_agents(), Action::kWait);

  std::ofstream trace_file;
  std::optional<TraceWriter> trace;
  if (options.trace_path) {
    trace_file.open(*options.trace_path);
    if (!trace_file) throw Error(ErrorCode::kIo, "cannot write " + *options.trace_path);
    trace.emplace(trace_file);
    trace->write_header(env);
  }

  while (!env.all_done()) {
    observe_all(env, observations);
    for (int i = 0; i < env.num_agents(); ++i) {
      const auto& agent = env.agents()[i];
      if (!agent.active) {
        actions[i] = Action::kWait;
        continue;
      }
      const PolicyInput input{observations[i], agent.position, agent.goal, env.tick()};
      actions[i] = act(policy, memories[i], input, planner);
    }
    const auto outcome = env.step(actions);
    if (trace) trace->write_tick(env, actions, outcome);
  }

  const auto m = metrics(env);
  EpisodeResult result;
  result.config_name = std::string(config_name);
  result.seed = env_seed;
  result.policy_seed = policy_seed;
  result.policy_name = std::string(policy_name(policy));
  result.isr = m.isr;
  result.csr = m.csr;
  result.steps_used = env.tick();
  result.wall_time = seconds_since(start);
  return result;
}

EpisodeResult run_episode(const BenchmarkEntry& entry, PolicyKind policy, std::uint64_t env_seed,
                          std::uint64_t policy_seed) {
  return run_episode(entry.to_config(), entry.name, policy, env_seed, policy_seed);
}

std::vector<EpisodeResult> run_episodes(const GridConfig& config, std::string_view config_name,
                                        PolicyKind policy, int num_episodes,
                                        std::uint64_t base_seed, const EvaluateOptions& options) {
  if (num_episodes < 1) {
    throw Error(ErrorCode::kInvalidArgument, "num_episodes must be >= 1");
  }
  require_valid(config);
  std::vector<EpisodeResult> results(num_episodes);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (int i = next++; i < num_episodes; i = next++) {
      try {
        EpisodeOptions episode_options;
        if (options.trace_prefix) {
          episode_options.trace_path = *options.trace_prefix + std::to_string(i) + ".jsonl";
        }
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
        results[i] = run_episode(config, config_name, policy, seed, seed, episode_options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(num_episodes));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

AggregateResult aggregate(std::span<const EpisodeResult> results) {
  AggregateResult agg;
  if (results.empty()) return agg;
  agg.config_name = results.front().config_name;
  agg.policy_name = results.front().policy_name;
  agg.episodes = static_cast<int>(results.size());
  double isr_sum = 0.0;
  double steps_sum = 0.0;
  int solved = 0;
  for (const auto& r : results) {
    double agent_sum = 0.0;
    for (auto v : r.isr) agent_sum += v;
    isr_sum += r.isr.empty() ? 0.0 : agent_sum / static_cast<double>(r.isr.size());
    steps_sum += r.steps_used;
    solved += r.csr;
  }
  agg.mean_isr = isr_sum / agg.episodes;
  agg.csr_rate = static_cast<double>(solved) / agg.episodes;
  agg.mean_steps = steps_sum / agg.episodes;
  return agg;
}

AggregateResult evaluate(const GridConfig& config, std::string_view config_name, PolicyKind policy,
                         int num_episodes, std::uint64_t base_seed, const EvaluateOptions& options) {
  const auto results = run_episodes(config, config_name, policy, num_episodes, base_seed, options);
  return aggregate(results);
}

AggregateResult evaluate(const BenchmarkEntry& entry, PolicyKind policy, int num_episodes,
                         std::uint64_t base_seed, const EvaluateOptions& options) {
  return evaluate(entry.to_config(), entry.name, policy, num_episodes, base_seed, options);
}

ThroughputResult throughput_bench(int size, int num_agents, double seconds, std::uint64_t seed) {
  GridConfig config;
  config.size = size;
  config.density = 0.3;
  config.num_agents = num_agents;
  config.obs_radius = 5;
  config.max_episode_steps = 8 * size;

  Environment env(config, seed);
  auto memories = make_memories(num_agents, env.rows(), env.cols(), seed);
  PathPlanner planner;
  std::vector<Observation> observations;
  std::vector<Action> actions(num_agents, Action::kWait);

  ThroughputResult result;
  result.episodes = 1;
  double setup = 0.0;
  const auto start = Clock::now();
  while (seconds_since(start) - setup < seconds) {
    // Check the clock every 64 ticks.
    for (int k = 0; k < 64; ++k) {
      if (env.all_done()) {
        const auto reset_start = Clock::now();
        env.reset(seed + static_cast<std::uint64_t>(result.episodes));
        ++result.episodes;
        setup += seconds_since(reset_start);
      }
      observe_all(env, observations);
      for (int i = 0; i < num_agents; ++i) {
        const auto& agent = env.agents()[i];
        if (!agent.active) continue;
        const PolicyInput input{observations[i], agent.position, agent.goal, env.tick()};
        actions[i] = act(PolicyKind::kRandom, memories[i], input, planner);
        ++result.agent_steps;
      }
      env.step(actions);
      ++result.env_steps;
    }
  }
  result.seconds = seconds_since(start) - setup;
  result.agent_steps_per_second = static_cast<double>(result.agent_steps) / result.seconds;
  result.env_steps_per_second = static_cast<double>(result.env_steps) / result.seconds;
  return result;
}

std::string format_results(std::span<const AggregateResult> results, ResultFormat format) {
  if (format == ResultFormat::kJson) {
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      array.push_back({{"config_name", r.config_name},
                       {"policy_name", r.policy_name},
                       {"episodes", r.episodes},
                       {"mean_isr", r.mean_isr},
                       {"csr_rate", r.csr_rate},
                       {"mean_steps", r.mean_steps}});
    }
    return array.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "config_name,policy_name,episodes,mean_isr,csr_rate,mean_steps\n";
  for (const auto& r : results) {
    out << r.config_name << ',' << r.policy_name << ',' << r.episodes << ','
        << format_double(r.mean_isr) << ',' << format_double(r.csr_rate) << ','
        << format_double(r.mean_steps) << '\n';
  }
  return out.str();
}

void write_results(std::span<const AggregateResult> results, const std::string& path,
                   ResultFormat format) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << format_results(results, format);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

std::vector<AggregateResult> read_results_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::vector<AggregateResult> results;
  try {
    const auto array = nlohmann::json::parse(in);
    for (const auto& j : array) {
      AggregateResult r;
      r.config_name = j.at("config_name").get<std::string>();
      r.policy_name = j.at("policy_name").get<std::string>();
      r.episodes = j.at("episodes").get<int>();
      r.mean_isr = j.at("mean_isr").get<double>();
      r.csr_rate = j.at("csr_rate").get<double>();
      r.mean_steps = j.at("mean_steps").get<double>();
      results.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("results file: ") + e.what());
  }
  return results;
}

}  // namespace pomapf
