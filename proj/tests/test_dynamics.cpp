#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "pomapf/dynamics.hpp"
#include "pomapf/error.hpp"
#include "pomapf/harness.hpp"

namespace pomapf {
namespace {

using A = Action;

std::vector<CellCoord> resolve(const ObstacleGrid& g, const std::vector<CellCoord>& pos,
                               const std::vector<Action>& actions,
                               std::vector<std::uint8_t> active = {}) {
  if (active.empty()) active.assign(pos.size(), 1);
  return resolve_moves(g, pos, active, actions);
}

GridConfig explicit_config(std::vector<std::string> rows, std::vector<AgentPlacement> agents,
                           int max_steps = 64) {
  GridConfig config;
  config.size = static_cast<int>(rows.size());
  config.map = MapSpec{std::move(rows)};
  config.num_agents = static_cast<int>(agents.size());
  config.agents = std::move(agents);
  config.max_episode_steps = max_steps;
  config.obs_radius = 2;
  return config;
}

void expect_error(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(ResolveMoves, CorridorSwapBothStay) {
  ObstacleGrid g(1, 4, 0);
  const std::vector<CellCoord> pos = {{0, 1}, {0, 2}};
  const std::vector<Action> acts = {A::kRight, A::kLeft};
  EXPECT_EQ(resolve(g, pos, acts), pos);
  EXPECT_EQ(oracle::brute_force_moves(g, pos, {1, 1}, acts), pos);
}

TEST(ResolveMoves, ChainFollows) {
  ObstacleGrid g(1, 4, 0);
  const std::vector<CellCoord> pos = {{0, 0}, {0, 1}};
  const std::vector<Action> acts = {A::kRight, A::kRight};
  const std::vector<CellCoord> expected = {{0, 1}, {0, 2}};
  EXPECT_EQ(resolve(g, pos, acts), expected);
  EXPECT_EQ(oracle::brute_force_moves(g, pos, {1, 1}, acts), expected);
}

TEST(ResolveMoves, VertexConflictCascades) {
  // A(1,0) and B(1,2) both target X=(1,1); C(2,0) targets A's cell.
  ObstacleGrid g(3, 3, 0);
  const std::vector<CellCoord> pos = {{1, 0}, {1, 2}, {2, 0}};
  const std::vector<Action> acts = {A::kRight, A::kLeft, A::kUp};
  EXPECT_EQ(resolve(g, pos, acts), pos);
  EXPECT_EQ(oracle::brute_force_moves(g, pos, {1, 1, 1}, acts), pos);
}

TEST(ResolveMoves, RotationMoves) {
  ObstacleGrid g(2, 2, 0);
  // Clockwise cycle over all four cells.
  const std::vector<CellCoord> pos = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  const std::vector<Action> acts = {A::kRight, A::kDown, A::kLeft, A::kUp};
  const std::vector<CellCoord> expected = {{0, 1}, {1, 1}, {1, 0}, {0, 0}};
  EXPECT_EQ(resolve(g, pos, acts), expected);
  EXPECT_EQ(oracle::brute_force_moves(g, pos, {1, 1, 1, 1}, acts), expected);
}

TEST(ResolveMoves, ObstacleAndBoundsStay) {
  auto g = ObstacleGrid(2, 2, 0);
  g(0, 1) = 1;
  const std::vector<CellCoord> pos = {{0, 0}, {1, 1}};
  EXPECT_EQ(resolve(g, pos, {A::kRight, A::kDown}), pos);
  EXPECT_EQ(resolve(g, pos, {A::kUp, A::kRight}), pos);
}

TEST(ResolveMoves, InactiveBlocksNothing) {
  ObstacleGrid g(1, 3, 0);
  const std::vector<CellCoord> pos = {{0, 1}, {0, 0}};
  const auto out = resolve(g, pos, {A::kRight, A::kRight}, {0, 1});
  EXPECT_EQ(out[0], (CellCoord{0, 1}));  // inactive: untouched, action ignored
  EXPECT_EQ(out[1], (CellCoord{0, 1}));
}

// Enumerates every joint action on the given layout and compares against the oracle.
int compare_all_joint_actions(const ObstacleGrid& g, const std::vector<CellCoord>& pos,
                              const std::vector<std::uint8_t>& active) {
  const std::size_t n = pos.size();
  int total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= kNumActions;
  MoveResolver resolver;
  std::vector<Action> acts(n);
  std::vector<CellCoord> out(n);
  int mismatches = 0;
  for (int code = 0; code < total; ++code) {
    int rest = code;
    for (std::size_t i = 0; i < n; ++i) {
      acts[i] = static_cast<Action>(rest % kNumActions);
      rest /= kNumActions;
    }
    resolver.resolve(g, pos, active, acts, out);
    if (out != oracle::brute_force_moves(g, pos, active, acts)) ++mismatches;
  }
  return mismatches;
}

TEST(ResolveMoves, ExhaustiveTwoByTwo) {
  // Every obstacle mask, every agent subset (any order is covered by the order test), every
  // joint action, every active pattern.
  int mismatches = 0;
  for (int mask = 0; mask < 16; ++mask) {
    ObstacleGrid g(2, 2, 0);
    std::vector<CellCoord> free_cells;
    for (int c = 0; c < 4; ++c) {
      if (mask & (1 << c)) {
        g(c / 2, c % 2) = 1;
      } else {
        free_cells.push_back({c / 2, c % 2});
      }
    }
    const int f = static_cast<int>(free_cells.size());
    for (int subset = 1; subset < (1 << f); ++subset) {
      std::vector<CellCoord> pos;
      for (int b = 0; b < f; ++b) {
        if (subset & (1 << b)) pos.push_back(free_cells[b]);
      }
      for (int act_mask = 1; act_mask < (1 << pos.size()); ++act_mask) {
        std::vector<std::uint8_t> active(pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i) active[i] = (act_mask >> i) & 1;
        mismatches += compare_all_joint_actions(g, pos, active);
      }
    }
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(ResolveMoves, RandomFourByFour) {
  Rng rng(2024);
  int mismatches = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int rows = 2 + static_cast<int>(rng.below(3));
    const int cols = 2 + static_cast<int>(rng.below(3));
    ObstacleGrid g(rows, cols, 0);
    std::vector<CellCoord> free_cells;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        if (rng.below(5) == 0) {
          g(r, c) = 1;
        } else {
          free_cells.push_back({r, c});
        }
      }
    }
    if (free_cells.empty()) continue;
    const std::size_t n = 1 + rng.below(std::min<std::size_t>(4, free_cells.size()));
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(free_cells[i], free_cells[i + rng.below(free_cells.size() - i)]);
    }
    std::vector<CellCoord> pos(free_cells.begin(), free_cells.begin() + n);
    std::vector<std::uint8_t> active(n, 1);
    if (rng.below(4) == 0) active[rng.below(n)] = 0;
    mismatches += compare_all_joint_actions(g, pos, active);
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(ResolveMoves, OrderIndependentAndLocal) {
  Rng rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    ObstacleGrid g(5, 5, 0);
    std::vector<CellCoord> cells;
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) {
        if (rng.below(6) == 0) g(r, c) = 1;
        else cells.push_back({r, c});
      }
    const std::size_t n = std::min<std::size_t>(cells.size(), 2 + rng.below(7));
    for (std::size_t i = 0; i < n; ++i) std::swap(cells[i], cells[i + rng.below(cells.size() - i)]);
    std::vector<CellCoord> pos(cells.begin(), cells.begin() + n);
    std::vector<Action> acts(n);
    for (auto& a : acts) a = static_cast<Action>(rng.below(5));
    const auto out = resolve(g, pos, acts);

    std::set<CellCoord> occupied;
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_TRUE(out[i] == pos[i] || out[i] == apply_action(pos[i], acts[i]));
      EXPECT_TRUE(occupied.insert(out[i]).second);
      EXPECT_EQ(g[out[i]], 0);
    }

    // Reverse the agent order; each agent must land on the same cell.
    std::vector<CellCoord> rpos(pos.rbegin(), pos.rend());
    std::vector<Action> racts(acts.rbegin(), acts.rend());
    const auto rout = resolve(g, rpos, racts);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(rout[n - 1 - i], out[i]);
    EXPECT_EQ(resolve(g, pos, acts), out);
  }
}

TEST(Environment, ResetDeterministic) {
  const auto config = registry_lookup("Pogema-8x8-easy-v0").to_config();
  Environment a(config, 42), b(config, 42);
  EXPECT_EQ(a.obstacles(), b.obstacles());
  EXPECT_EQ(a.agents(), b.agents());
  EXPECT_EQ(a.tick(), 0);
}

TEST(Environment, ExplicitInstanceVerbatim) {
  auto config = explicit_config({"....", ".#..", "....", "...."}, {{{0, 0}, {3, 3}}});
  config.density = 0.9;
  Environment env(config, 1);
  EXPECT_EQ(env.obstacles(), parse_map(*config.map));
  EXPECT_EQ(env.agents()[0].position, (CellCoord{0, 0}));
  EXPECT_EQ(env.agents()[0].goal, (CellCoord{3, 3}));
}

TEST(Environment, EightAgentsOnEightByEight) {
  GridConfig config;
  config.size = 8;
  config.density = 0.3;
  config.num_agents = 8;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Environment env(config, seed);
    std::vector<std::vector<bool>> passable(8, std::vector<bool>(8));
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) passable[r][c] = env.obstacles()(r, c) == 0;
    std::set<CellCoord> starts, goals;
    for (const auto& a : env.agents()) {
      starts.insert(a.position);
      goals.insert(a.goal);
      EXPECT_TRUE(oracle::bfs_distance(passable, a.position, a.goal).has_value());
    }
    EXPECT_EQ(starts.size(), 8u);
    EXPECT_EQ(goals.size(), 8u);
  }
}

TEST(Environment, OneStepGoal) {
  Environment env(explicit_config({"...", "...", "..."}, {{{1, 1}, {1, 2}}}), 0);
  const std::vector<Action> acts = {A::kRight};
  const auto outcome = env.step(acts);
  EXPECT_EQ(outcome.rewards[0], 1.0);
  EXPECT_TRUE(outcome.terminated[0]);
  EXPECT_TRUE(outcome.all_done);
  EXPECT_FALSE(env.agents()[0].active);
  EXPECT_TRUE(env.agents()[0].reached);
  EXPECT_EQ(env.occupant({1, 2}), -1);
  expect_error(ErrorCode::kEpisodeOver, [&] { env.step(acts); });
}

TEST(Environment, MoveIntoObstacleStays) {
  Environment env(explicit_config({".#.", "...", "..."}, {{{1, 1}, {2, 2}}}), 0);
  const auto outcome = env.step(std::vector<Action>{A::kUp});
  EXPECT_EQ(env.agents()[0].position, (CellCoord{1, 1}));
  EXPECT_EQ(outcome.rewards[0], 0.0);
  EXPECT_FALSE(outcome.all_done);
}

TEST(Environment, LengthMismatch) {
  Environment env(explicit_config({"...", "...", "..."}, {{{0, 0}, {2, 2}}}), 0);
  expect_error(ErrorCode::kLengthMismatch, [&] { env.step(std::vector<Action>{}); });
  expect_error(ErrorCode::kLengthMismatch,
               [&] { env.step(std::vector<Action>{A::kWait, A::kWait}); });
}

TEST(Environment, TimeoutEndsWithoutReward) {
  Environment env(explicit_config({"...", "...", "..."}, {{{0, 0}, {2, 2}}}, 3), 0);
  for (int t = 0; t < 3; ++t) {
    const auto outcome = env.step(std::vector<Action>{A::kWait});
    EXPECT_EQ(outcome.rewards[0], 0.0);
    EXPECT_EQ(outcome.all_done, t == 2);
  }
  const auto m = metrics(env);
  EXPECT_EQ(m.isr, std::vector<std::uint8_t>{0});
  EXPECT_EQ(m.csr, 0);
}

TEST(Environment, VacatedGoalCellUsableNextTick) {
  const auto config = explicit_config({"....", "....", "....", "...."},
                                      {{{0, 1}, {0, 2}}, {{1, 2}, {3, 3}}});
  Environment env(config, 0);
  auto outcome = env.step(std::vector<Action>{A::kRight, A::kWait});
  EXPECT_EQ(outcome.rewards, (std::vector<double>{1.0, 0.0}));
  EXPECT_FALSE(env.agents()[0].active);
  // Agent 0 disappeared on (0,2); agent 1 may now enter it. Agent 0's action is ignored.
  outcome = env.step(std::vector<Action>{A::kDown, A::kUp});
  EXPECT_EQ(env.agents()[0].position, (CellCoord{0, 2}));
  EXPECT_EQ(env.agents()[1].position, (CellCoord{0, 2}));
  EXPECT_EQ(outcome.rewards, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(oracle::brute_force_moves(env.obstacles(), {{0, 2}, {1, 2}}, {0, 1}, {A::kDown, A::kUp}),
            (std::vector<CellCoord>{{0, 2}, {0, 2}}));

  // In the tick the agent disappears its destination still counts as contended.
  Environment same_tick(config, 0);
  outcome = same_tick.step(std::vector<Action>{A::kRight, A::kUp});
  EXPECT_EQ(outcome.rewards, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(same_tick.agents()[0].position, (CellCoord{0, 1}));
  EXPECT_EQ(same_tick.agents()[1].position, (CellCoord{1, 2}));
}

TEST(Environment, FollowerIntoDisappearingLeader) {
  // Leader enters its goal while the follower takes the leader's old cell in the same tick.
  Environment env(explicit_config({"....", "....", "....", "...."},
                                  {{{0, 1}, {0, 2}}, {{0, 0}, {3, 3}}}),
                  0);
  env.step(std::vector<Action>{A::kRight, A::kRight});
  EXPECT_FALSE(env.agents()[0].active);
  EXPECT_EQ(env.agents()[1].position, (CellCoord{0, 1}));
  env.step(std::vector<Action>{A::kWait, A::kRight});
  EXPECT_EQ(env.agents()[1].position, (CellCoord{0, 2}));
}

TEST(Environment, RandomRolloutInvariants) {
  const auto config = registry_lookup("Pogema-16x16-extra-hard-v0").to_config();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Environment env(config, seed);
    Rng rng(seed);
    std::vector<Action> acts(env.num_agents());
    double reward_sum = 0.0;
    while (!env.all_done()) {
      for (auto& a : acts) a = static_cast<Action>(rng.below(5));
      const auto outcome = env.step(acts);
      std::set<CellCoord> occupied;
      for (int i = 0; i < env.num_agents(); ++i) {
        const auto& agent = env.agents()[i];
        reward_sum += outcome.rewards[i];
        EXPECT_TRUE(outcome.rewards[i] == 0.0 || outcome.rewards[i] == 1.0);
        if (!agent.active) continue;
        EXPECT_TRUE(occupied.insert(agent.position).second);
        EXPECT_EQ(env.obstacles()[agent.position], 0);
        EXPECT_EQ(env.occupant(agent.position), i);
      }
      EXPECT_LE(env.tick(), config.max_episode_steps);
    }
    const auto m = metrics(env);
    int successes = 0;
    int product = 1;
    for (auto v : m.isr) {
      successes += v;
      product *= v;
    }
    EXPECT_EQ(reward_sum, successes);
    EXPECT_EQ(m.csr, product);
    for (const auto& agent : env.agents()) {
      EXPECT_EQ(agent.cumulative_reward, agent.reached ? 1.0 : 0.0);
      EXPECT_FALSE(agent.reached && agent.active);
    }
  }
}

TEST(Metrics, AllReached) {
  Environment env(explicit_config({"...", "...", "..."}, {{{0, 0}, {0, 1}}, {{2, 2}, {2, 1}}}), 0);
  expect_error(ErrorCode::kEpisodeNotFinished, [&] { metrics(env); });
  env.step(std::vector<Action>{A::kRight, A::kLeft});
  const auto m = metrics(env);
  EXPECT_EQ(m.isr, (std::vector<std::uint8_t>{1, 1}));
  EXPECT_EQ(m.csr, 1);
}

}  // namespace
}  // namespace pomapf
