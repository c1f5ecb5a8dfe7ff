#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pomapf/core.hpp"
#include "pomapf/policy.hpp"

namespace pomapf {

struct BenchmarkEntry {
  std::string name;
  int size = 0;
  double density = 0.3;
  int num_agents = 0;
  int obs_radius = 5;
  int max_episode_steps = 0;

  GridConfig to_config() const;
};

/// The sixteen builtin configurations, ordered by size then difficulty.
std::span<const BenchmarkEntry> registry();
/// Throws Error(kName) listing every valid name.
const BenchmarkEntry& registry_lookup(std::string_view name);

struct EpisodeResult {
  std::string config_name;
  std::uint64_t seed = 0;
  std::uint64_t policy_seed = 0;
  std::string policy_name;
  std::vector<std::uint8_t> isr;
  int csr = 0;
  int steps_used = 0;
  double wall_time = 0.0;

  /// Equality of everything except wall_time.
  bool same_outcome(const EpisodeResult& other) const;
};

struct AggregateResult {
  std::string config_name;
  std::string policy_name;
  int episodes = 0;
  double mean_isr = 0.0;
  double csr_rate = 0.0;
  double mean_steps = 0.0;

  friend bool operator==(const AggregateResult&, const AggregateResult&) = default;
};

struct EpisodeOptions {
  /// When set, a line-delimited trace is written to this path.
  std::optional<std::string> trace_path;
};

EpisodeResult run_episode(const GridConfig& config, std::string_view config_name, PolicyKind policy,
                          std::uint64_t env_seed, std::uint64_t policy_seed,
                          const EpisodeOptions& options = {});
EpisodeResult run_episode(const BenchmarkEntry& entry, PolicyKind policy, std::uint64_t env_seed,
                          std::uint64_t policy_seed);

struct EvaluateOptions {
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
  /// Per-episode traces go to "<trace_prefix><index>.jsonl" when set.
  std::optional<std::string> trace_prefix;
};

/// Episode i uses env seed base_seed + i and policy seed base_seed + i.
/// Results are merged in seed order, so output does not depend on `workers`.
std::vector<EpisodeResult> run_episodes(const GridConfig& config, std::string_view config_name,
                                        PolicyKind policy, int num_episodes,
                                        std::uint64_t base_seed, const EvaluateOptions& options = {});

AggregateResult aggregate(std::span<const EpisodeResult> results);

/// Throws Error(kInvalidArgument) when num_episodes < 1.
AggregateResult evaluate(const GridConfig& config, std::string_view config_name, PolicyKind policy,
                         int num_episodes, std::uint64_t base_seed,
                         const EvaluateOptions& options = {});
AggregateResult evaluate(const BenchmarkEntry& entry, PolicyKind policy, int num_episodes,
                         std::uint64_t base_seed, const EvaluateOptions& options = {});

struct ThroughputResult {
  double agent_steps_per_second = 0.0;
  double env_steps_per_second = 0.0;
  long env_steps = 0;
  long agent_steps = 0;
  int episodes = 0;
  double seconds = 0.0;
};

/// Single-threaded random-policy loop (observe_all, act, step) over a
/// size x size map at density 0.3, radius 5 and episode limit 8*size. Counts
/// one agent step per active agent per tick; resets count as setup time.
ThroughputResult throughput_bench(int size, int num_agents, double seconds,
                                  std::uint64_t seed = 0);

enum class ResultFormat { kJson, kCsv };

/// CSV columns: config_name, policy_name, episodes, mean_isr, csr_rate, mean_steps.
/// Throws Error(kIo) when the file cannot be written.
void write_results(std::span<const AggregateResult> results, const std::string& path,
                   ResultFormat format);
std::string format_results(std::span<const AggregateResult> results, ResultFormat format);
/// Reads what write_results produced in JSON form.
std::vector<AggregateResult> read_results_json(const std::string& path);

}  // namespace pomapf
