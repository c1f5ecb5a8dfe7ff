#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pomapf/core.hpp"
#include "pomapf/grid.hpp"
#include "pomapf/mapgen.hpp"

namespace pomapf {

/// Joint-move resolution for one tick, over active agents only:
///  1. WAIT, off-grid and obstacle targets stay;
///  2. two agents swapping cells both stay;
///  3. all agents contending for one cell stay;
///  4. an agent targeting the cell of a staying agent stays (iterated to a fixed point).
/// The result is the unique largest move set consistent with these rules, so it
/// does not depend on agent order. Chains and rotations of three or more agents move.
/// Inactive agents keep their position and block nothing.
///
/// Holds scratch buffers; reuse one instance across ticks.
class MoveResolver {
 public:
  void resolve(const ObstacleGrid& obstacles, std::span<const CellCoord> positions,
               std::span<const std::uint8_t> active, std::span<const Action> actions,
               std::span<CellCoord> out);

 private:
  void ensure_capacity(const ObstacleGrid& obstacles);

  Matrix<std::int32_t> occupant_;
  Matrix<std::int32_t> claimant_;
  Matrix<std::int32_t> claims_;
  std::vector<CellCoord> targets_;
  std::vector<std::uint8_t> moving_;
  std::vector<std::int32_t> queue_;
};

/// Convenience wrapper over MoveResolver.
std::vector<CellCoord> resolve_moves(const ObstacleGrid& obstacles,
                                     std::span<const CellCoord> positions,
                                     std::span<const std::uint8_t> active,
                                     std::span<const Action> actions);

struct StepOutcome {
  std::vector<double> rewards;
  std::vector<std::uint8_t> terminated;
  bool all_done = false;
  int tick = 0;
};

struct EpisodeMetrics {
  std::vector<std::uint8_t> isr;
  int csr = 0;
};

class Environment {
 public:
  /// Validates the config and builds the instance. `seed` overrides config.seed;
  /// with neither set a nondeterministic seed is drawn.
  explicit Environment(const GridConfig& config, std::optional<std::uint64_t> seed = std::nullopt);

  /// New instance for the same config.
  void reset(std::optional<std::uint64_t> seed = std::nullopt);

  /// Throws Error(kLengthMismatch) on a wrong action count and
  /// Error(kEpisodeOver) once the episode is done. Actions of inactive agents are ignored.
  StepOutcome step(std::span<const Action> actions);

  const GridConfig& config() const noexcept { return config_; }
  const ObstacleGrid& obstacles() const noexcept { return obstacles_; }
  const std::vector<AgentState>& agents() const noexcept { return agents_; }
  int num_agents() const noexcept { return static_cast<int>(agents_.size()); }
  int rows() const noexcept { return obstacles_.rows(); }
  int cols() const noexcept { return obstacles_.cols(); }
  int obs_radius() const noexcept { return config_.obs_radius; }
  int tick() const noexcept { return tick_; }
  std::uint64_t seed() const noexcept { return seed_; }
  bool all_done() const noexcept { return all_done_; }
  /// Start cells of the current instance.
  const std::vector<AgentPlacement>& placements() const noexcept { return placements_; }

  /// Index of the active agent on `cell`, or -1. `cell` must be in bounds.
  int occupant(CellCoord cell) const noexcept { return occupancy_[cell]; }

 private:
  void load_instance(Instance instance);

  GridConfig config_;
  std::uint64_t seed_ = 0;
  ObstacleGrid obstacles_;
  std::vector<AgentPlacement> placements_;
  std::vector<AgentState> agents_;
  Matrix<std::int32_t> occupancy_;
  int tick_ = 0;
  bool all_done_ = false;

  MoveResolver resolver_;
  std::vector<CellCoord> positions_;
  std::vector<CellCoord> resolved_;
  std::vector<std::uint8_t> active_;
};

/// Throws Error(kEpisodeNotFinished) unless env.all_done().
EpisodeMetrics metrics(const Environment& env);

}  // namespace pomapf
