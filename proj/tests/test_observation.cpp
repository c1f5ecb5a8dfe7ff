#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pomapf/error.hpp"
#include "pomapf/harness.hpp"
#include "pomapf/observation.hpp"

namespace pomapf {
namespace {

GridConfig explicit_config(std::vector<std::string> rows, std::vector<AgentPlacement> agents,
                           int radius) {
  GridConfig config;
  config.size = static_cast<int>(rows.size());
  config.map = MapSpec{std::move(rows)};
  config.num_agents = static_cast<int>(agents.size());
  config.agents = std::move(agents);
  config.obs_radius = radius;
  return config;
}

std::vector<std::vector<int>> channel_rows(const Observation& obs, Observation::Channel ch) {
  std::vector<std::vector<int>> out(obs.side(), std::vector<int>(obs.side()));
  for (int r = 0; r < obs.side(); ++r)
    for (int c = 0; c < obs.side(); ++c) out[r][c] = obs.at(ch, r, c);
  return out;
}

TEST(Observe, RadiusFiveIsElevenSquare) {
  Environment env(registry_lookup("Pogema-8x8-easy-v0").to_config(), 1);
  const auto obs = observe(env, 0);
  EXPECT_EQ(obs.side(), 11);
  EXPECT_EQ(obs.flat().size(), 3u * 11 * 11);
  EXPECT_EQ(obs.channel(Observation::kGoal).size(), 121u);
}

TEST(Observe, CornerPadsWithObstacles) {
  Environment env(explicit_config({"...", "...", "..."}, {{{0, 0}, {2, 2}}}, 2), 0);
  const auto obs = observe(env, 0);
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) {
      const bool outside = r < 2 || c < 2;
      EXPECT_EQ(obs.at(Observation::kObstacles, r, c), outside ? 1 : 0) << r << "," << c;
    }
  }
  EXPECT_EQ(obs.at(Observation::kAgents, 2, 2), 1);  // self at centre
  EXPECT_EQ(obs.at(Observation::kGoal, 4, 4), 1);
}

TEST(Observe, FarGoalClampsToEdge) {
  std::vector<std::string> rows(21, std::string(21, '.'));
  Environment env(explicit_config(rows, {{{10, 0}, {10, 20}}}, 5), 0);
  const auto obs = observe(env, 0);
  EXPECT_EQ(obs.at(Observation::kGoal, 5, 10), 1);
  EXPECT_EQ(channel_rows(obs, Observation::kGoal), oracle::goal_patch({10, 0}, {10, 20}, 5));
}

TEST(Observe, GoalInsideWindow) {
  std::vector<std::string> rows(12, std::string(12, '.'));
  Environment env(explicit_config(rows, {{{6, 6}, {4, 9}}}, 5), 0);
  const auto obs = observe(env, 0);
  EXPECT_EQ(obs.at(Observation::kGoal, 5 - 2, 5 + 3), 1);
}

TEST(Observe, OtherAgentsOnlyByLocation) {
  Environment env(explicit_config({".....", ".....", ".....", ".....", "....."},
                                  {{{2, 2}, {0, 0}}, {{2, 3}, {4, 4}}, {{0, 4}, {4, 0}}},
                                  1),
                  0);
  const auto obs = observe(env, 0);
  EXPECT_EQ(obs.at(Observation::kAgents, 1, 1), 1);
  EXPECT_EQ(obs.at(Observation::kAgents, 1, 2), 1);
  int agents_seen = 0;
  for (auto v : obs.channel(Observation::kAgents)) agents_seen += v;
  EXPECT_EQ(agents_seen, 2);  // agent 2 is out of view
  // Goal channel only carries the observer's own goal.
  int goals = 0;
  for (auto v : obs.channel(Observation::kGoal)) goals += v;
  EXPECT_EQ(goals, 1);
  EXPECT_EQ(obs.at(Observation::kGoal, 0, 0), 1);
}

TEST(Observe, Errors) {
  Environment env(explicit_config({"...", "...", "..."}, {{{0, 0}, {0, 1}}, {{2, 2}, {2, 1}}}, 1), 0);
  EXPECT_THROW(observe(env, 2), Error);
  EXPECT_THROW(observe(env, -1), Error);
  env.step(std::vector<Action>{Action::kRight, Action::kWait});
  try {
    observe(env, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInactiveAgent);
  }
}

TEST(ObserveAll, PlaceholderForFinishedAgents) {
  Environment env(explicit_config({"...", "...", "..."}, {{{0, 0}, {0, 1}}, {{2, 2}, {2, 0}}}, 1), 0);
  auto all = observe_all(env);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0], observe(env, 0));
  EXPECT_EQ(all[1], observe(env, 1));
  env.step(std::vector<Action>{Action::kRight, Action::kWait});
  all = observe_all(env);
  EXPECT_TRUE(all[0].is_zero());
  EXPECT_EQ(all[0].side(), 3);
  EXPECT_EQ(all[1], observe(env, 1));
}

TEST(Observe, MatchesPadAndCropOracle) {
  Rng rng(31337);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    GridConfig config;
    config.size = 2 + static_cast<int>(rng.below(14));
    config.density = 0.05 * static_cast<double>(rng.below(8));
    config.obs_radius = 1 + static_cast<int>(rng.below(6));
    config.num_agents = 1 + static_cast<int>(rng.below(4));
    if (!validate_config(config).ok()) continue;
    Environment env(config, rng.next());
    const int n = env.num_agents();
    std::vector<std::vector<int>> obstacles(env.rows(), std::vector<int>(env.cols()));
    std::vector<std::vector<int>> agents(env.rows(), std::vector<int>(env.cols(), 0));
    for (int r = 0; r < env.rows(); ++r)
      for (int c = 0; c < env.cols(); ++c) obstacles[r][c] = env.obstacles()(r, c);
    for (const auto& a : env.agents()) agents[a.position.row][a.position.col] = 1;

    const auto all = observe_all(env);
    for (int i = 0; i < n; ++i) {
      const auto& a = env.agents()[i];
      const auto obs = observe(env, i);
      EXPECT_EQ(all[i], obs);
      EXPECT_EQ(channel_rows(obs, Observation::kObstacles),
                oracle::padded_crop(obstacles, 1, a.position, config.obs_radius));
      EXPECT_EQ(channel_rows(obs, Observation::kAgents),
                oracle::padded_crop(agents, 0, a.position, config.obs_radius));
      EXPECT_EQ(channel_rows(obs, Observation::kGoal),
                oracle::goal_patch(a.position, a.goal, config.obs_radius));
      ++checked;
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(GlobalState, SnapshotSemantics) {
  Environment env(explicit_config({"....", "....", "....", "...."},
                                  {{{0, 0}, {3, 3}}, {{3, 0}, {0, 3}}}, 1),
                  0);
  const auto before = global_state(env);
  EXPECT_EQ(before.agents.size(), 2u);
  EXPECT_EQ(before.obstacles, env.obstacles());
  env.step(std::vector<Action>{Action::kRight, Action::kWait});
  const auto after = global_state(env);
  EXPECT_EQ(before.agents[0].position, (CellCoord{0, 0}));  // unaffected by the step
  EXPECT_EQ(after.agents[0].position, (CellCoord{0, 1}));
  EXPECT_EQ(after.agents[1], before.agents[1]);
  EXPECT_EQ(after.tick, before.tick + 1);
  EXPECT_EQ(after.obstacles, before.obstacles);
}

}  // namespace
}  // namespace pomapf
