#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pomapf/core.hpp"
#include "pomapf/grid.hpp"
#include "pomapf/rng.hpp"

namespace pomapf {

/// Obstacles and agent placements for one episode.
struct Instance {
  ObstacleGrid obstacles;
  std::vector<AgentPlacement> agents;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Exactly obstacle_count(size*size, density) blocked cells, uniform without
/// replacement. Cells listed in `reserved` are never blocked.
ObstacleGrid generate_obstacles(int size, double density, Rng& rng,
                                const std::vector<CellCoord>& reserved = {});

/// Connected-component id per free cell, -1 on obstacles. Ids are dense from 0.
Matrix<int> label_components(const ObstacleGrid& obstacles);

/// Starts are drawn uniformly without replacement from free cells whose
/// component has at least two cells; each goal uniformly from its start's
/// component minus the start and goals already taken.
/// Throws Error(kPlacementFailure) when a component runs out of goal cells.
std::vector<AgentPlacement> place_agents(const ObstacleGrid& obstacles, int num_agents,
                                         Rng& start_rng, Rng& goal_rng);
std::vector<AgentPlacement> place_agents(const ObstacleGrid& obstacles, int num_agents, Rng& rng);

/// 4-connected BFS. Throws Error(kCellBlocked) if an endpoint is blocked or off-grid.
bool reachable(const ObstacleGrid& obstacles, CellCoord from, CellCoord to);

/// Throws Error(kBadCharacter) / Error(kRaggedRows).
ObstacleGrid parse_map(const MapSpec& spec);
MapSpec render_map(const ObstacleGrid& obstacles);

/// Splits multi-line grid text into rows; blank lines and surrounding
/// whitespace are dropped.
MapSpec map_from_text(std::string_view text);
std::string map_to_text(const MapSpec& spec);

/// Builds the episode instance for a validated config. Explicit map and agents
/// are used verbatim. Generated parts retry on placement failure with the next
/// attempt substream, up to `max_attempts`, then throw Error(kGenerationFailure).
Instance generate_instance(const GridConfig& config, std::uint64_t seed, int max_attempts = 256);

}  // namespace pomapf
