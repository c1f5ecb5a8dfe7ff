#include "pomapf/mapgen.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "pomapf/error.hpp"

namespace pomapf {

namespace {

// Moves k uniformly chosen elements to the front (partial Fisher-Yates).
template <typename T>
void partial_shuffle(std::vector<T>& items, std::size_t k, Rng& rng) {
  k = std::min(k, items.size());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(items.size() - i));
    std::swap(items[i], items[j]);
  }
}

constexpr std::array<std::pair<int, int>, 4> kNeighbourOffsets = {{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};

}  // namespace

ObstacleGrid generate_obstacles(int size, double density, Rng& rng,
                                const std::vector<CellCoord>& reserved) {
  ObstacleGrid grid(size, size, 0);
  const long target = obstacle_count(static_cast<long>(size) * size, density);
  std::vector<std::uint32_t> candidates;
  candidates.reserve(grid.cell_count());
  std::vector<std::uint8_t> is_reserved(grid.cell_count(), 0);
  for (auto c : reserved) {
    if (grid.in_bounds(c)) is_reserved[grid.index(c)] = 1;
  }
  for (std::uint32_t i = 0; i < grid.cell_count(); ++i) {
    if (!is_reserved[i]) candidates.push_back(i);
  }
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(target), candidates.size());
  partial_shuffle(candidates, count, rng);
  auto cells = grid.flat();
  for (std::size_t i = 0; i < count; ++i) cells[candidates[i]] = 1;
  return grid;
}

Matrix<int> label_components(const ObstacleGrid& obstacles) {
  Matrix<int> labels(obstacles.rows(), obstacles.cols(), -1);
  std::vector<CellCoord> queue;
  queue.reserve(obstacles.cell_count());
  int next_label = 0;
  for (int r = 0; r < obstacles.rows(); ++r) {
    for (int c = 0; c < obstacles.cols(); ++c) {
      if (obstacles(r, c) != 0 || labels(r, c) != -1) continue;
      queue.clear();
      queue.push_back({r, c});
      labels(r, c) = next_label;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto cur = queue[head];
        for (auto [dr, dc] : kNeighbourOffsets) {
          const CellCoord n{cur.row + dr, cur.col + dc};
          if (is_free(obstacles, n) && labels[n] == -1) {
            labels[n] = next_label;
            queue.push_back(n);
          }
        }
      }
      ++next_label;
    }
  }
  return labels;
}

std::vector<AgentPlacement> place_agents(const ObstacleGrid& obstacles, int num_agents,
                                         Rng& start_rng, Rng& goal_rng) {
  const auto labels = label_components(obstacles);
  int num_components = 0;
  for (int id : labels.flat()) num_components = std::max(num_components, id + 1);

  std::vector<std::vector<std::uint32_t>> members(num_components);
  for (std::uint32_t i = 0; i < labels.cell_count(); ++i) {
    const int id = labels.flat()[i];
    if (id >= 0) members[id].push_back(i);
  }

  // A start in a singleton component could never get a goal.
  std::vector<std::uint32_t> start_pool;
  for (const auto& comp : members) {
    if (comp.size() >= 2) start_pool.insert(start_pool.end(), comp.begin(), comp.end());
  }
  std::sort(start_pool.begin(), start_pool.end());
  if (static_cast<long>(start_pool.size()) < num_agents) {
    throw Error(ErrorCode::kPlacementFailure,
                "only " + std::to_string(start_pool.size()) + " usable start cells for " +
                    std::to_string(num_agents) + " agents");
  }
  partial_shuffle(start_pool, static_cast<std::size_t>(num_agents), start_rng);

  std::vector<std::uint8_t> goal_taken(obstacles.cell_count(), 0);
  std::vector<AgentPlacement> placements;
  placements.reserve(num_agents);
  for (int i = 0; i < num_agents; ++i) {
    const std::uint32_t start = start_pool[i];
    const auto& comp = members[labels.flat()[start]];
    auto usable = [&](std::uint32_t cell) { return cell != start && !goal_taken[cell]; };

    std::uint32_t goal = start;
    bool found = false;
    // Rejection sampling stays uniform over usable cells; fall back to an
    // explicit list when the component is mostly used up.
    for (int attempt = 0; attempt < 32 && !found; ++attempt) {
      const std::uint32_t cell = comp[goal_rng.below(comp.size())];
      if (usable(cell)) {
        goal = cell;
        found = true;
      }
    }
    if (!found) {
      std::vector<std::uint32_t> options;
      std::copy_if(comp.begin(), comp.end(), std::back_inserter(options), usable);
      if (options.empty()) {
        throw Error(ErrorCode::kPlacementFailure,
                    "component of agent " + std::to_string(i) + " has no free goal cell left");
      }
      goal = options[goal_rng.below(options.size())];
    }
    goal_taken[goal] = 1;
    placements.push_back({obstacles.coord(start), obstacles.coord(goal)});
  }
  return placements;
}

std::vector<AgentPlacement> place_agents(const ObstacleGrid& obstacles, int num_agents, Rng& rng) {
  return place_agents(obstacles, num_agents, rng, rng);
}

bool reachable(const ObstacleGrid& obstacles, CellCoord from, CellCoord to) {
  if (!is_free(obstacles, from) || !is_free(obstacles, to)) {
    throw Error(ErrorCode::kCellBlocked, "reachable: endpoint is blocked or off-grid");
  }
  if (from == to) return true;
  std::vector<std::uint8_t> seen(obstacles.cell_count(), 0);
  std::vector<CellCoord> queue{from};
  seen[obstacles.index(from)] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto cur = queue[head];
    for (auto [dr, dc] : kNeighbourOffsets) {
      const CellCoord n{cur.row + dr, cur.col + dc};
      if (!is_free(obstacles, n) || seen[obstacles.index(n)]) continue;
      if (n == to) return true;
      seen[obstacles.index(n)] = 1;
      queue.push_back(n);
    }
  }
  return false;
}

ObstacleGrid parse_map(const MapSpec& spec) {
  if (spec.rows.empty() || spec.rows.front().empty()) {
    throw Error(ErrorCode::kParse, "map is empty");
  }
  const int rows = static_cast<int>(spec.rows.size());
  const int cols = static_cast<int>(spec.rows.front().size());
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(spec.rows[r].size()) != cols) {
      throw Error(ErrorCode::kRaggedRows, "row " + std::to_string(r) + " has length " +
                                              std::to_string(spec.rows[r].size()) + ", expected " +
                                              std::to_string(cols));
    }
  }
  ObstacleGrid grid(rows, cols, 0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const char ch = spec.rows[r][c];
      if (ch == '#') {
        grid(r, c) = 1;
      } else if (ch != '.') {
        throw Error(ErrorCode::kBadCharacter, "bad map character '" + std::string(1, ch) +
                                                  "' at (" + std::to_string(r) + "," +
                                                  std::to_string(c) + ")");
      }
    }
  }
  return grid;
}

MapSpec render_map(const ObstacleGrid& obstacles) {
  MapSpec spec;
  spec.rows.reserve(obstacles.rows());
  for (int r = 0; r < obstacles.rows(); ++r) {
    std::string line(obstacles.cols(), '.');
    for (int c = 0; c < obstacles.cols(); ++c) {
      if (obstacles(r, c)) line[c] = '#';
    }
    spec.rows.push_back(std::move(line));
  }
  return spec;
}

MapSpec map_from_text(std::string_view text) {
  MapSpec spec;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    spec.rows.push_back(line.substr(first, last - first + 1));
  }
  return spec;
}

std::string map_to_text(const MapSpec& spec) {
  std::string out;
  for (const auto& row : spec.rows) {
    out += row;
    out += '\n';
  }
  return out;
}

Instance generate_instance(const GridConfig& config, std::uint64_t seed, int max_attempts) {
  require_valid(config);
  if (config.map && config.agents) {
    return {parse_map(*config.map), *config.agents};
  }

  std::vector<CellCoord> reserved;
  if (config.agents) {
    for (const auto& a : *config.agents) {
      reserved.push_back(a.start);
      reserved.push_back(a.goal);
    }
  }

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Instance instance;
    if (config.map) {
      instance.obstacles = parse_map(*config.map);
    } else {
      auto rng = Rng::substream(seed, Stream::kObstacles, attempt);
      instance.obstacles = generate_obstacles(config.size, config.density, rng, reserved);
    }
    if (config.agents) {
      instance.agents = *config.agents;
      return instance;
    }
    auto start_rng = Rng::substream(seed, Stream::kStarts, attempt);
    auto goal_rng = Rng::substream(seed, Stream::kGoals, attempt);
    try {
      instance.agents = place_agents(instance.obstacles, config.num_agents, start_rng, goal_rng);
      return instance;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPlacementFailure) throw;
    }
  }
  throw Error(ErrorCode::kGenerationFailure,
              "could not place " + std::to_string(config.num_agents) + " agents after " +
                  std::to_string(max_attempts) + " attempts");
}

}  // namespace pomapf
