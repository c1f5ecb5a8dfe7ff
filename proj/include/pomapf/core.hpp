#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pomapf {

struct CellCoord {
  int row = 0;
  int col = 0;

  friend bool operator==(CellCoord, CellCoord) = default;
  friend auto operator<=>(CellCoord, CellCoord) = default;
};

inline int manhattan(CellCoord a, CellCoord b) {
  return (a.row > b.row ? a.row - b.row : b.row - a.row) +
         (a.col > b.col ? a.col - b.col : b.col - a.col);
}

// Wire encoding is part of the trace and bindings contract.
enum class Action : std::uint8_t { kWait = 0, kUp = 1, kDown = 2, kLeft = 3, kRight = 4 };

inline constexpr int kNumActions = 5;
inline constexpr std::array<Action, kNumActions> kAllActions = {
    Action::kWait, Action::kUp, Action::kDown, Action::kLeft, Action::kRight};
inline constexpr std::array<Action, 4> kMoveActions = {Action::kUp, Action::kDown,
                                                       Action::kLeft, Action::kRight};

constexpr int encode(Action a) { return static_cast<int>(a); }

/// Throws Error(kInvalidAction) for values outside 0..4.
Action decode_action(int value);

std::string_view action_name(Action a);

/// Offset by one 4-connected step. No bounds checking.
constexpr CellCoord apply_action(CellCoord pos, Action a) {
  switch (a) {
    case Action::kUp: return {pos.row - 1, pos.col};
    case Action::kDown: return {pos.row + 1, pos.col};
    case Action::kLeft: return {pos.row, pos.col - 1};
    case Action::kRight: return {pos.row, pos.col + 1};
    case Action::kWait: break;
  }
  return pos;
}

/// Action moving `from` to the 4-neighbour `to`; WAIT when they are equal.
Action action_between(CellCoord from, CellCoord to);

/// Grid text: '.' free, '#' obstacle, one string per row.
struct MapSpec {
  std::vector<std::string> rows;

  friend bool operator==(const MapSpec&, const MapSpec&) = default;
};

struct AgentPlacement {
  CellCoord start;
  CellCoord goal;

  friend bool operator==(const AgentPlacement&, const AgentPlacement&) = default;
};

struct GridConfig {
  int size = 8;
  double density = 0.3;
  int num_agents = 1;
  int obs_radius = 5;
  int max_episode_steps = 64;
  std::optional<std::uint64_t> seed;
  std::optional<MapSpec> map;
  std::optional<std::vector<AgentPlacement>> agents;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct AgentState {
  CellCoord position;
  CellCoord goal;
  bool active = true;
  bool reached = false;
  double cumulative_reward = 0.0;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct Violation {
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  /// One "field: message" line per violation.
  std::string summary() const;
};

/// floor(density * cells), with a small epsilon so 0.29 * 100 gives 29.
long obstacle_count(long cells, double density);

ValidationReport validate_config(const GridConfig& config);

/// Throws Error(kValidation) carrying the report summary.
void require_valid(const GridConfig& config);

}  // namespace pomapf
