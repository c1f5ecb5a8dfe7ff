#include "pomapf/core.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "pomapf/error.hpp"

namespace pomapf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidation: return "ValidationError";
    case ErrorCode::kGenerationFailure: return "GenerationFailure";
    case ErrorCode::kPlacementFailure: return "PlacementFailure";
    case ErrorCode::kEpisodeOver: return "EpisodeOver";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEpisodeNotFinished: return "EpisodeNotFinished";
    case ErrorCode::kInactiveAgent: return "InactiveAgent";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kCellBlocked: return "CellBlocked";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kBadCharacter: return "BadCharacter";
    case ErrorCode::kRaggedRows: return "RaggedRows";
    case ErrorCode::kName: return "NameError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInvalidAction: return "InvalidAction";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

Action decode_action(int value) {
  if (value < 0 || value >= kNumActions) {
    throw Error(ErrorCode::kInvalidAction,
                "action " + std::to_string(value) + " outside 0.." +
                    std::to_string(kNumActions - 1));
  }
  return static_cast<Action>(value);
}

std::string_view action_name(Action a) {
  switch (a) {
    case Action::kWait: return "WAIT";
    case Action::kUp: return "UP";
    case Action::kDown: return "DOWN";
    case Action::kLeft: return "LEFT";
    case Action::kRight: return "RIGHT";
  }
  return "?";
}

Action action_between(CellCoord from, CellCoord to) {
  for (Action a : kMoveActions) {
    if (apply_action(from, a) == to) return a;
  }
  return Action::kWait;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (const auto& v : violations) out << v.field << ": " << v.message << '\n';
  return out.str();
}

namespace {

std::string coord_str(CellCoord c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

}  // namespace

long obstacle_count(long cells, double density) {
  return static_cast<long>(std::floor(density * static_cast<double>(cells) + 1e-9));
}

ValidationReport validate_config(const GridConfig& config) {
  ValidationReport report;
  auto fail = [&](std::string field, std::string message) {
    report.violations.push_back({std::move(field), std::move(message)});
  };

  if (config.size < 2) fail("size", "size must be >= 2");
  if (!(config.density >= 0.0)) fail("density", "density must be >= 0");
  if (!(config.density < 1.0)) fail("density", "density must be < 1");
  if (config.num_agents < 1) fail("num_agents", "num_agents must be >= 1");
  if (config.obs_radius < 1) fail("obs_radius", "obs_radius must be >= 1");
  if (config.max_episode_steps < 1) fail("max_episode_steps", "max_episode_steps must be >= 1");

  // Bounds used for agent checks; comes from the map when present.
  int rows = config.size;
  int cols = config.size;
  const MapSpec* map = config.map ? &*config.map : nullptr;
  if (map) {
    if (map->rows.empty() || map->rows.front().empty()) {
      fail("map", "map must be nonempty");
      map = nullptr;
    } else {
      rows = static_cast<int>(map->rows.size());
      cols = static_cast<int>(map->rows.front().size());
      bool ragged = false;
      long free_cells = 0;
      for (std::size_t r = 0; r < map->rows.size(); ++r) {
        const auto& line = map->rows[r];
        if (static_cast<int>(line.size()) != cols) ragged = true;
        for (std::size_t c = 0; c < line.size(); ++c) {
          if (line[c] == '.') {
            ++free_cells;
          } else if (line[c] != '#') {
            fail("map", "bad character '" + std::string(1, line[c]) + "' at " +
                            coord_str({static_cast<int>(r), static_cast<int>(c)}));
          }
        }
      }
      if (ragged) {
        fail("map", "map rows must all have the same length");
        map = nullptr;
      } else {
        if (rows != cols) fail("map", "map must be square");
        if (rows != config.size) {
          fail("size", "size " + std::to_string(config.size) + " does not match map size " +
                           std::to_string(rows));
        }
        if (free_cells < config.num_agents) fail("map", "fewer free cells than agents");
      }
    }
  }

  if (config.agents) {
    const auto& agents = *config.agents;
    if (static_cast<int>(agents.size()) != config.num_agents) {
      fail("agents", "agents length mismatch: " + std::to_string(agents.size()) +
                         " entries for num_agents=" + std::to_string(config.num_agents));
    }
    std::set<CellCoord> starts;
    std::set<CellCoord> goals;
    for (std::size_t i = 0; i < agents.size(); ++i) {
      const std::string field = "agents[" + std::to_string(i) + "]";
      const auto& a = agents[i];
      bool in_bounds = true;
      for (auto [name, cell] : {std::pair{"start", a.start}, std::pair{"goal", a.goal}}) {
        if (cell.row < 0 || cell.col < 0 || cell.row >= rows || cell.col >= cols) {
          fail(field + "." + name, std::string(name) + " " + coord_str(cell) + " out of bounds");
          in_bounds = false;
        } else if (map && map->rows[cell.row][cell.col] == '#') {
          fail(field + "." + name, std::string(name) + " " + coord_str(cell) + " lies on an obstacle");
        }
      }
      if (in_bounds && a.start == a.goal) fail(field, "start equals goal");
      if (!starts.insert(a.start).second) fail(field + ".start", "duplicate start " + coord_str(a.start));
      if (!goals.insert(a.goal).second) fail(field + ".goal", "duplicate goal " + coord_str(a.goal));
    }
  }

  if (!map && report.ok()) {
    const long cells = static_cast<long>(config.size) * config.size;
    const long blocked = obstacle_count(cells, config.density);
    if (cells - blocked < 2L * config.num_agents && !config.agents) {
      fail("num_agents", "not enough free cells for distinct starts and goals");
    }
  }
  return report;
}

void require_valid(const GridConfig& config) {
  auto report = validate_config(config);
  if (!report.ok()) throw Error(ErrorCode::kValidation, report.summary());
}

}  // namespace pomapf
