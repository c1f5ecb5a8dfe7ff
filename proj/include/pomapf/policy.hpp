#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pomapf/core.hpp"
#include "pomapf/grid.hpp"
#include "pomapf/observation.hpp"
#include "pomapf/rng.hpp"

namespace pomapf {

enum class PolicyKind { kAStar, kAStarGA, kAStarFL, kAStarGAFL, kRandom };

inline constexpr std::array<PolicyKind, 5> kAllPolicyKinds = {
    PolicyKind::kAStar, PolicyKind::kAStarGA, PolicyKind::kAStarFL, PolicyKind::kAStarGAFL,
    PolicyKind::kRandom};

/// CLI names: astar, astar+ga, astar+fl, astar+ga+fl, random.
std::string_view policy_name(PolicyKind kind);
/// Throws Error(kName) listing the valid names.
PolicyKind parse_policy_kind(std::string_view name);

constexpr bool uses_greedy(PolicyKind k) {
  return k == PolicyKind::kAStarGA || k == PolicyKind::kAStarGAFL;
}
constexpr bool uses_fix_loops(PolicyKind k) {
  return k == PolicyKind::kAStarFL || k == PolicyKind::kAStarGAFL;
}

/// What one agent is given each tick. The global position and goal anchor the
/// egocentric observation so the agent can plan on its own map.
struct PolicyInput {
  const Observation& observation;
  CellCoord own_position;
  CellCoord own_goal;
  int tick = 0;
};

enum class CellKnowledge : std::uint8_t { kUnknown = 0, kFree = 1, kBlocked = 2 };

/// Private per-agent state: the obstacle map seen so far, the last three
/// positions, and the agent's own random stream.
class AgentMemory {
 public:
  AgentMemory(int rows, int cols, Rng rng);

  const Matrix<CellKnowledge>& known_obstacles() const noexcept { return known_; }
  CellKnowledge knowledge(CellCoord c) const noexcept { return known_[c]; }
  bool blocked(CellCoord c) const noexcept { return known_[c] == CellKnowledge::kBlocked; }
  int rows() const noexcept { return known_.rows(); }
  int cols() const noexcept { return known_.cols(); }

  /// Oldest first; at most three entries.
  std::span<const CellCoord> history() const noexcept {
    return std::span<const CellCoord>(history_.data(), history_size_);
  }
  void push_position(CellCoord p);

  Rng& rng() noexcept { return rng_; }

  /// Only cells inside the grid are written; known cells are overwritten with
  /// the latest reading, never reset to unknown.
  void stamp(CellCoord c, bool is_blocked) {
    known_[c] = is_blocked ? CellKnowledge::kBlocked : CellKnowledge::kFree;
  }

 private:
  Matrix<CellKnowledge> known_;
  std::array<CellCoord, 3> history_{};
  std::size_t history_size_ = 0;
  Rng rng_;
};

/// Writes the in-grid part of the obstacles channel into memory and appends
/// the position to the history.
void update_memory(AgentMemory& memory, const PolicyInput& input);

/// Global cells of other agents visible in the observation (centre excluded).
std::vector<CellCoord> observed_agents(const PolicyInput& input);

/// A* with Manhattan heuristic and unit costs over the agent's map. Known
/// obstacles and `dynamic_blocked` are impassable, unknown cells are free, the
/// goal is never blocked. The returned path lists the cells after `start`, so
/// its size is the path length. Owns reusable scratch buffers.
class PathPlanner {
 public:
  std::optional<std::vector<CellCoord>> plan(const AgentMemory& memory, CellCoord start,
                                             CellCoord goal,
                                             std::span<const CellCoord> dynamic_blocked);

  /// Nodes expanded by the last plan call.
  std::size_t expansions() const noexcept { return expansions_; }

 private:
  void prepare(std::size_t cells);

  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> closed_stamp_;
  std::vector<std::uint32_t> blocked_stamp_;
  std::vector<std::int32_t> g_;
  std::vector<std::int32_t> parent_;
  std::uint32_t generation_ = 0;
  std::size_t expansions_ = 0;

  struct Node {
    std::int32_t f;
    std::int32_t h;
    std::int32_t cell;
  };
  std::vector<Node> heap_;
};

std::optional<std::vector<CellCoord>> plan_astar(const AgentMemory& memory, CellCoord start,
                                                 CellCoord goal,
                                                 std::span<const CellCoord> dynamic_blocked);

/// Step to the admissible neighbour nearest the goal (ties: UP, DOWN, LEFT,
/// RIGHT); WAIT if none is admissible.
Action greedy_action(const AgentMemory& memory, CellCoord pos, CellCoord goal,
                     std::span<const CellCoord> dynamic_blocked);

/// True when the last three positions read A, B, A.
bool oscillating(const AgentMemory& memory);

/// While oscillating, replaces `proposed` with WAIT with probability 1/2.
Action fix_loops(AgentMemory& memory, Action proposed);

/// One decision for one agent; reads nothing but its own input and memory.
Action act(PolicyKind kind, AgentMemory& memory, const PolicyInput& input, PathPlanner& planner);

/// Per-agent memories for one episode, seeded from (policy_seed, agent index).
std::vector<AgentMemory> make_memories(int num_agents, int rows, int cols,
                                       std::uint64_t policy_seed);

}  // namespace pomapf
