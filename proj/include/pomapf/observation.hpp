#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pomapf/core.hpp"
#include "pomapf/dynamics.hpp"
#include "pomapf/grid.hpp"

namespace pomapf {

/// Egocentric (2R+1)x(2R+1) patch in three binary channels, stored flat and
/// row-major in channel order obstacles, agents, goal. This layout is the
/// serialization contract for foreign bindings.
class Observation {
 public:
  enum Channel : int { kObstacles = 0, kAgents = 1, kGoal = 2 };
  static constexpr int kNumChannels = 3;

  Observation() = default;
  explicit Observation(int radius)
      : radius_(radius), side_(2 * radius + 1),
        data_(static_cast<std::size_t>(kNumChannels) * side_ * side_, 0) {}

  int radius() const noexcept { return radius_; }
  int side() const noexcept { return side_; }

  std::uint8_t at(Channel ch, int r, int c) const noexcept { return data_[offset(ch, r, c)]; }
  std::uint8_t& at(Channel ch, int r, int c) noexcept { return data_[offset(ch, r, c)]; }

  std::span<const std::uint8_t> channel(Channel ch) const noexcept {
    return std::span<const std::uint8_t>(data_).subspan(
        static_cast<std::size_t>(ch) * side_ * side_, static_cast<std::size_t>(side_) * side_);
  }
  std::span<const std::uint8_t> flat() const noexcept { return data_; }

  bool is_zero() const;

  friend bool operator==(const Observation&, const Observation&) = default;

 private:
  std::size_t offset(Channel ch, int r, int c) const noexcept {
    return (static_cast<std::size_t>(ch) * side_ + r) * side_ + c;
  }

  int radius_ = 0;
  int side_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Patch centred on agent `agent_index`. Off-grid cells read as obstacles; the
/// agents channel includes the observer at the centre; the goal channel marks
/// the goal offset clamped per axis to [-R, R].
/// Throws Error(kIndexOutOfRange) / Error(kInactiveAgent).
Observation observe(const Environment& env, int agent_index);

/// Index-aligned with the agents; inactive agents get an all-zero patch.
std::vector<Observation> observe_all(const Environment& env);
void observe_all(const Environment& env, std::vector<Observation>& out);

struct AgentRecord {
  CellCoord position;
  CellCoord goal;
  bool active = true;

  friend bool operator==(const AgentRecord&, const AgentRecord&) = default;
};

/// Full-information snapshot (copy, independent of later steps).
struct GlobalState {
  ObstacleGrid obstacles;
  std::vector<AgentRecord> agents;
  int tick = 0;

  friend bool operator==(const GlobalState&, const GlobalState&) = default;
};

GlobalState global_state(const Environment& env);

}  // namespace pomapf
