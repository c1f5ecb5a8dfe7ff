#include "pomapf/dynamics.hpp"

#include <random>

#include "pomapf/error.hpp"

namespace pomapf {

void MoveResolver::ensure_capacity(const ObstacleGrid& obstacles) {
  if (occupant_.rows() != obstacles.rows() || occupant_.cols() != obstacles.cols()) {
    occupant_ = Matrix<std::int32_t>(obstacles.rows(), obstacles.cols(), -1);
    claimant_ = Matrix<std::int32_t>(obstacles.rows(), obstacles.cols(), -1);
    claims_ = Matrix<std::int32_t>(obstacles.rows(), obstacles.cols(), 0);
  }
}

void MoveResolver::resolve(const ObstacleGrid& obstacles, std::span<const CellCoord> positions,
                           std::span<const std::uint8_t> active, std::span<const Action> actions,
                           std::span<CellCoord> out) {
  const std::size_t n = positions.size();
  ensure_capacity(obstacles);
  targets_.assign(n, CellCoord{});
  moving_.assign(n, 0);
  queue_.clear();

  for (std::size_t i = 0; i < n; ++i) {
    if (active[i]) occupant_[positions[i]] = static_cast<std::int32_t>(i);
  }

  // Rule 1, and claim counting for rule 3.
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    const CellCoord t = apply_action(positions[i], actions[i]);
    if (actions[i] == Action::kWait || !is_free(obstacles, t)) continue;
    targets_[i] = t;
    moving_[i] = 1;
    ++claims_[t];
    claimant_[t] = static_cast<std::int32_t>(i);
  }

  // Rules 2 and 3 are evaluated on the candidate set before any removals.
  for (std::size_t i = 0; i < n; ++i) {
    if (!moving_[i]) continue;
    const CellCoord t = targets_[i];
    bool stay = claims_[t] > 1;
    if (!stay) {
      const std::int32_t j = occupant_[t];
      stay = j >= 0 && moving_[j] && targets_[j] == positions[i];
    }
    if (stay) queue_.push_back(static_cast<std::int32_t>(i));
  }
  for (auto i : queue_) moving_[i] = 0;

  // Rule 4 cascade, seeded with every active non-mover whose cell is claimed.
  for (std::size_t i = 0; i < n; ++i) {
    if (active[i] && !moving_[i] && claims_[positions[i]] > 0) {
      queue_.push_back(static_cast<std::int32_t>(i));
    }
  }
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const CellCoord cell = positions[queue_[head]];
    if (claims_[cell] != 1) continue;  // contended cells already stopped every claimant
    const std::int32_t m = claimant_[cell];
    if (moving_[m]) {
      moving_[m] = 0;
      queue_.push_back(m);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    out[i] = moving_[i] ? targets_[i] : positions[i];
  }

  // Restore scratch.
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    occupant_[positions[i]] = -1;
    const CellCoord t = apply_action(positions[i], actions[i]);
    if (obstacles.in_bounds(t)) {
      claims_[t] = 0;
      claimant_[t] = -1;
    }
  }
}

std::vector<CellCoord> resolve_moves(const ObstacleGrid& obstacles,
                                     std::span<const CellCoord> positions,
                                     std::span<const std::uint8_t> active,
                                     std::span<const Action> actions) {
  if (active.size() != positions.size() || actions.size() != positions.size()) {
    throw Error(ErrorCode::kLengthMismatch, "resolve_moves: inputs are not index-aligned");
  }
  MoveResolver resolver;
  std::vector<CellCoord> out(positions.size());
  resolver.resolve(obstacles, positions, active, actions, out);
  return out;
}

Environment::Environment(const GridConfig& config, std::optional<std::uint64_t> seed)
    : config_(config) {
  require_valid(config_);
  reset(seed);
}

void Environment::reset(std::optional<std::uint64_t> seed) {
  if (seed) {
    seed_ = *seed;
  } else if (config_.seed) {
    seed_ = *config_.seed;
  } else {
    std::random_device device;
    seed_ = (static_cast<std::uint64_t>(device()) << 32) ^ device();
  }
  load_instance(generate_instance(config_, seed_));
}

void Environment::load_instance(Instance instance) {
  obstacles_ = std::move(instance.obstacles);
  placements_ = std::move(instance.agents);
  agents_.clear();
  agents_.reserve(placements_.size());
  occupancy_ = Matrix<std::int32_t>(obstacles_.rows(), obstacles_.cols(), -1);
  for (std::size_t i = 0; i < placements_.size(); ++i) {
    agents_.push_back({placements_[i].start, placements_[i].goal, true, false, 0.0});
    occupancy_[placements_[i].start] = static_cast<std::int32_t>(i);
  }
  tick_ = 0;
  all_done_ = false;
}

StepOutcome Environment::step(std::span<const Action> actions) {
  if (actions.size() != agents_.size()) {
    throw Error(ErrorCode::kLengthMismatch, "step: expected " + std::to_string(agents_.size()) +
                                                " actions, got " + std::to_string(actions.size()));
  }
  if (all_done_) throw Error(ErrorCode::kEpisodeOver, "step called after the episode ended");

  const std::size_t n = agents_.size();
  positions_.resize(n);
  active_.resize(n);
  resolved_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    positions_[i] = agents_[i].position;
    active_[i] = agents_[i].active ? 1 : 0;
  }
  resolver_.resolve(obstacles_, positions_, active_, actions, resolved_);

  StepOutcome outcome;
  outcome.rewards.assign(n, 0.0);
  outcome.terminated.assign(n, 0);

  for (std::size_t i = 0; i < n; ++i) {
    if (agents_[i].active) occupancy_[agents_[i].position] = -1;
  }
  bool everyone_reached = true;
  for (std::size_t i = 0; i < n; ++i) {
    auto& agent = agents_[i];
    if (agent.active) {
      agent.position = resolved_[i];
      if (agent.position == agent.goal) {
        agent.active = false;
        agent.reached = true;
        agent.cumulative_reward += 1.0;
        outcome.rewards[i] = 1.0;
      } else {
        occupancy_[agent.position] = static_cast<std::int32_t>(i);
      }
    }
    outcome.terminated[i] = agent.reached ? 1 : 0;
    everyone_reached = everyone_reached && agent.reached;
  }

  ++tick_;
  all_done_ = everyone_reached || tick_ >= config_.max_episode_steps;
  outcome.all_done = all_done_;
  outcome.tick = tick_;
  return outcome;
}

EpisodeMetrics metrics(const Environment& env) {
  if (!env.all_done()) {
    throw Error(ErrorCode::kEpisodeNotFinished, "metrics requested before the episode ended");
  }
  EpisodeMetrics m;
  m.csr = 1;
  for (const auto& agent : env.agents()) {
    m.isr.push_back(agent.reached ? 1 : 0);
    if (!agent.reached) m.csr = 0;
  }
  return m;
}

}  // namespace pomapf
