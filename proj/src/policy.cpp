#include "pomapf/policy.hpp"

#include <algorithm>
#include <limits>

#include "pomapf/error.hpp"

namespace pomapf {

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kAStar: return "astar";
    case PolicyKind::kAStarGA: return "astar+ga";
    case PolicyKind::kAStarFL: return "astar+fl";
    case PolicyKind::kAStarGAFL: return "astar+ga+fl";
    case PolicyKind::kRandom: return "random";
  }
  return "?";
}

PolicyKind parse_policy_kind(std::string_view name) {
  std::string valid;
  for (auto kind : kAllPolicyKinds) {
    if (policy_name(kind) == name) return kind;
    if (!valid.empty()) valid += ", ";
    valid += policy_name(kind);
  }
  throw Error(ErrorCode::kName,
              "unknown policy '" + std::string(name) + "'; valid policies: " + valid);
}

AgentMemory::AgentMemory(int rows, int cols, Rng rng)
    : known_(rows, cols, CellKnowledge::kUnknown), rng_(std::move(rng)) {}

void AgentMemory::push_position(CellCoord p) {
  if (history_size_ < history_.size()) {
    history_[history_size_++] = p;
    return;
  }
  history_[0] = history_[1];
  history_[1] = history_[2];
  history_[2] = p;
}

void update_memory(AgentMemory& memory, const PolicyInput& input) {
  const auto& obs = input.observation;
  const int radius = obs.radius();
  for (int dr = 0; dr < obs.side(); ++dr) {
    const int r = input.own_position.row + dr - radius;
    if (r < 0 || r >= memory.rows()) continue;
    for (int dc = 0; dc < obs.side(); ++dc) {
      const int c = input.own_position.col + dc - radius;
      if (c < 0 || c >= memory.cols()) continue;
      memory.stamp({r, c}, obs.at(Observation::kObstacles, dr, dc) != 0);
    }
  }
  memory.push_position(input.own_position);
}

std::vector<CellCoord> observed_agents(const PolicyInput& input) {
  const auto& obs = input.observation;
  const int radius = obs.radius();
  std::vector<CellCoord> cells;
  for (int dr = 0; dr < obs.side(); ++dr) {
    for (int dc = 0; dc < obs.side(); ++dc) {
      if ((dr == radius && dc == radius) || !obs.at(Observation::kAgents, dr, dc)) continue;
      cells.push_back({input.own_position.row + dr - radius, input.own_position.col + dc - radius});
    }
  }
  return cells;
}

void PathPlanner::prepare(std::size_t cells) {
  if (stamp_.size() != cells) {
    stamp_.assign(cells, 0);
    closed_stamp_.assign(cells, 0);
    blocked_stamp_.assign(cells, 0);
    g_.assign(cells, 0);
    parent_.assign(cells, -1);
    generation_ = 0;
  }
  if (++generation_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    std::fill(closed_stamp_.begin(), closed_stamp_.end(), 0);
    std::fill(blocked_stamp_.begin(), blocked_stamp_.end(), 0);
    generation_ = 1;
  }
  heap_.clear();
  expansions_ = 0;
}

std::optional<std::vector<CellCoord>> PathPlanner::plan(const AgentMemory& memory, CellCoord start,
                                                        CellCoord goal,
                                                        std::span<const CellCoord> dynamic_blocked) {
  const auto& known = memory.known_obstacles();
  if (!known.in_bounds(start) || !known.in_bounds(goal)) return std::nullopt;
  if (start == goal) return std::vector<CellCoord>{};
  prepare(known.cell_count());

  for (auto c : dynamic_blocked) {
    if (known.in_bounds(c)) blocked_stamp_[known.index(c)] = generation_;
  }
  const auto goal_idx = static_cast<std::int32_t>(known.index(goal));
  blocked_stamp_[goal_idx] = 0;

  // Min-heap on (f, h, cell).
  auto later = [](const Node& a, const Node& b) {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.cell > b.cell;
  };

  const auto start_idx = static_cast<std::int32_t>(known.index(start));
  stamp_[start_idx] = generation_;
  g_[start_idx] = 0;
  parent_[start_idx] = -1;
  const int h0 = manhattan(start, goal);
  heap_.push_back({h0, h0, start_idx});

  const int cols = known.cols();
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), later);
    const Node node = heap_.back();
    heap_.pop_back();
    if (closed_stamp_[node.cell] == generation_) continue;
    closed_stamp_[node.cell] = generation_;
    ++expansions_;

    if (node.cell == goal_idx) {
      std::vector<CellCoord> path;
      for (std::int32_t cur = goal_idx; cur != start_idx; cur = parent_[cur]) {
        path.push_back(known.coord(cur));
      }
      std::reverse(path.begin(), path.end());
      return path;
    }

    const CellCoord here = known.coord(node.cell);
    const std::int32_t g_next = g_[node.cell] + 1;
    for (Action a : kMoveActions) {
      const CellCoord next = apply_action(here, a);
      if (!known.in_bounds(next)) continue;
      const auto idx = static_cast<std::int32_t>(next.row * cols + next.col);
      if (known.flat()[idx] == CellKnowledge::kBlocked && idx != goal_idx) continue;
      if (blocked_stamp_[idx] == generation_) continue;
      if (closed_stamp_[idx] == generation_) continue;
      if (stamp_[idx] == generation_ && g_[idx] <= g_next) continue;
      stamp_[idx] = generation_;
      g_[idx] = g_next;
      parent_[idx] = node.cell;
      const int h = manhattan(next, goal);
      heap_.push_back({g_next + h, h, idx});
      std::push_heap(heap_.begin(), heap_.end(), later);
    }
  }
  return std::nullopt;
}

std::optional<std::vector<CellCoord>> plan_astar(const AgentMemory& memory, CellCoord start,
                                                 CellCoord goal,
                                                 std::span<const CellCoord> dynamic_blocked) {
  PathPlanner planner;
  return planner.plan(memory, start, goal, dynamic_blocked);
}

Action greedy_action(const AgentMemory& memory, CellCoord pos, CellCoord goal,
                     std::span<const CellCoord> dynamic_blocked) {
  Action best = Action::kWait;
  int best_distance = std::numeric_limits<int>::max();
  for (Action a : kMoveActions) {
    const CellCoord next = apply_action(pos, a);
    if (!memory.known_obstacles().in_bounds(next) || memory.blocked(next)) continue;
    if (std::find(dynamic_blocked.begin(), dynamic_blocked.end(), next) != dynamic_blocked.end()) {
      continue;
    }
    const int d = manhattan(next, goal);
    if (d < best_distance) {
      best_distance = d;
      best = a;
    }
  }
  return best;
}

bool oscillating(const AgentMemory& memory) {
  const auto h = memory.history();
  return h.size() == 3 && h[2] == h[0] && h[2] != h[1];
}

Action fix_loops(AgentMemory& memory, Action proposed) {
  if (!oscillating(memory)) return proposed;
  return memory.rng().coin(0.5) ? Action::kWait : proposed;
}

Action act(PolicyKind kind, AgentMemory& memory, const PolicyInput& input, PathPlanner& planner) {
  if (kind == PolicyKind::kRandom) {
    return static_cast<Action>(memory.rng().below(kNumActions));
  }
  update_memory(memory, input);
  const auto others = observed_agents(input);

  Action action = Action::kWait;
  if (auto path = planner.plan(memory, input.own_position, input.own_goal, others)) {
    if (!path->empty()) action = action_between(input.own_position, path->front());
  } else if (uses_greedy(kind)) {
    action = greedy_action(memory, input.own_position, input.own_goal, others);
  }
  if (uses_fix_loops(kind)) action = fix_loops(memory, action);
  return action;
}

std::vector<AgentMemory> make_memories(int num_agents, int rows, int cols,
                                       std::uint64_t policy_seed) {
  std::vector<AgentMemory> memories;
  memories.reserve(num_agents);
  for (int i = 0; i < num_agents; ++i) {
    memories.emplace_back(rows, cols, Rng::substream(policy_seed, Stream::kPolicy, i));
  }
  return memories;
}

}  // namespace pomapf
