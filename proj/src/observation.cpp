#include "pomapf/observation.hpp"

#include <algorithm>

#include "pomapf/error.hpp"

namespace pomapf {

bool Observation::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v == 0; });
}

namespace {

void fill_observation(const Environment& env, int agent_index, Observation& obs) {
  const int radius = env.obs_radius();
  if (obs.radius() != radius) {
    obs = Observation(radius);
  }
  const auto& self = env.agents()[agent_index];
  const auto& grid = env.obstacles();
  const int side = obs.side();
  for (int dr = 0; dr < side; ++dr) {
    const int r = self.position.row + dr - radius;
    for (int dc = 0; dc < side; ++dc) {
      const int c = self.position.col + dc - radius;
      if (!grid.in_bounds(r, c)) {
        obs.at(Observation::kObstacles, dr, dc) = 1;
        obs.at(Observation::kAgents, dr, dc) = 0;
      } else {
        obs.at(Observation::kObstacles, dr, dc) = grid(r, c);
        obs.at(Observation::kAgents, dr, dc) = env.occupant({r, c}) >= 0 ? 1 : 0;
      }
      obs.at(Observation::kGoal, dr, dc) = 0;
    }
  }
  const int goal_r = std::clamp(self.goal.row - self.position.row, -radius, radius) + radius;
  const int goal_c = std::clamp(self.goal.col - self.position.col, -radius, radius) + radius;
  obs.at(Observation::kGoal, goal_r, goal_c) = 1;
}

}  // namespace

Observation observe(const Environment& env, int agent_index) {
  if (agent_index < 0 || agent_index >= env.num_agents()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "agent index " + std::to_string(agent_index) + " out of range");
  }
  if (!env.agents()[agent_index].active) {
    throw Error(ErrorCode::kInactiveAgent,
                "agent " + std::to_string(agent_index) + " is no longer active");
  }
  Observation obs(env.obs_radius());
  fill_observation(env, agent_index, obs);
  return obs;
}

void observe_all(const Environment& env, std::vector<Observation>& out) {
  out.resize(env.agents().size());
  for (int i = 0; i < env.num_agents(); ++i) {
    if (env.agents()[i].active) {
      fill_observation(env, i, out[i]);
    } else if (out[i].radius() != env.obs_radius() || !out[i].is_zero()) {
      out[i] = Observation(env.obs_radius());
    }
  }
}

std::vector<Observation> observe_all(const Environment& env) {
  std::vector<Observation> out;
  observe_all(env, out);
  return out;
}

GlobalState global_state(const Environment& env) {
  GlobalState state;
  state.obstacles = env.obstacles();
  state.tick = env.tick();
  state.agents.reserve(env.agents().size());
  for (const auto& a : env.agents()) state.agents.push_back({a.position, a.goal, a.active});
  return state;
}

}  // namespace pomapf
