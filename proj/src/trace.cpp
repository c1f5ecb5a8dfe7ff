#include "pomapf/trace.hpp"

#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>

#include "pomapf/error.hpp"
#include "pomapf/mapgen.hpp"

namespace pomapf {

using nlohmann::json;

namespace {

json cell_json(CellCoord c) { return json::array({c.row, c.col}); }

CellCoord cell_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kParse, "trace: bad cell");
  return {j.at(0).get<int>(), j.at(1).get<int>()};
}

}  // namespace

void TraceWriter::write_header(const Environment& env) {
  json agents = json::array();
  for (const auto& p : env.placements()) {
    agents.push_back({{"start", cell_json(p.start)}, {"goal", cell_json(p.goal)}});
  }
  json header = {{"type", "header"},
                 {"rows", env.rows()},
                 {"cols", env.cols()},
                 {"obs_radius", env.obs_radius()},
                 {"seed", env.seed()},
                 {"map", render_map(env.obstacles()).rows},
                 {"agents", std::move(agents)}};
  out_ << header.dump() << '\n';
}

void TraceWriter::write_tick(const Environment& env, std::span<const Action> actions,
                             const StepOutcome& outcome) {
  json encoded_actions = json::array();
  for (auto a : actions) encoded_actions.push_back(encode(a));
  json positions = json::array();
  json active = json::array();
  for (const auto& agent : env.agents()) {
    positions.push_back(cell_json(agent.position));
    active.push_back(agent.active ? 1 : 0);
  }
  json line = {{"type", "tick"},       {"tick", outcome.tick},        {"actions", encoded_actions},
               {"positions", positions}, {"active", active}, {"rewards", outcome.rewards}};
  out_ << line.dump() << '\n';
}

Trace read_trace(std::istream& in) {
  Trace trace;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      const auto type = j.at("type").get<std::string>();
      if (type == "header") {
        if (have_header) throw Error(ErrorCode::kParse, "duplicate header");
        trace.rows = j.at("rows").get<int>();
        trace.cols = j.at("cols").get<int>();
        trace.obs_radius = j.at("obs_radius").get<int>();
        trace.seed = j.at("seed").get<std::uint64_t>();
        trace.map.rows = j.at("map").get<std::vector<std::string>>();
        for (const auto& a : j.at("agents")) {
          trace.agents.push_back({cell_from(a.at("start")), cell_from(a.at("goal"))});
        }
        if (static_cast<int>(trace.map.rows.size()) != trace.rows) {
          throw Error(ErrorCode::kParse, "map height does not match rows");
        }
        parse_map(trace.map);
        have_header = true;
      } else if (type == "tick") {
        if (!have_header) throw Error(ErrorCode::kParse, "tick before header");
        TraceTick tick;
        tick.tick = j.at("tick").get<int>();
        tick.actions = j.at("actions").get<std::vector<int>>();
        for (const auto& p : j.at("positions")) tick.positions.push_back(cell_from(p));
        tick.active = j.at("active").get<std::vector<std::uint8_t>>();
        tick.rewards = j.at("rewards").get<std::vector<double>>();
        if (tick.positions.size() != trace.agents.size() ||
            tick.active.size() != trace.agents.size()) {
          throw Error(ErrorCode::kParse, "tick record does not match the agent count");
        }
        trace.ticks.push_back(std::move(tick));
      } else {
        throw Error(ErrorCode::kParse, "unknown record type '" + type + "'");
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, "trace line " + std::to_string(line_no) + ": " + e.what());
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, "trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw Error(ErrorCode::kParse, "trace has no header");
  return trace;
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  return read_trace(in);
}

}  // namespace pomapf
