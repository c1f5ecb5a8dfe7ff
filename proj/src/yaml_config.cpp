#include "pomapf/yaml_config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "pomapf/error.hpp"
#include "pomapf/mapgen.hpp"

namespace pomapf {

namespace {

const std::set<std::string> kKnownKeys = {"size",   "density", "num_agents", "obs_radius",
                                          "max_episode_steps", "seed", "map", "agents"};

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw Error(ErrorCode::kParse, "field '" + key + "' has the wrong type");
  }
}

CellCoord parse_cell(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence() || node.size() != 2) {
    throw Error(ErrorCode::kParse, field + " must be a [row, col] pair");
  }
  return {scalar<int>(node[0], field), scalar<int>(node[1], field)};
}

}  // namespace

GridConfig load_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse, std::string("YAML: ") + e.what());
  }
  if (!root.IsMap()) throw Error(ErrorCode::kParse, "config document must be a mapping");

  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!kKnownKeys.count(key)) throw Error(ErrorCode::kParse, "unknown key '" + key + "'");
  }

  GridConfig config;
  if (root["map"]) {
    config.map = map_from_text(scalar<std::string>(root["map"], "map"));
    config.size = static_cast<int>(config.map->rows.size());
  }
  if (root["size"]) config.size = scalar<int>(root["size"], "size");
  if (root["density"]) config.density = scalar<double>(root["density"], "density");
  if (root["obs_radius"]) config.obs_radius = scalar<int>(root["obs_radius"], "obs_radius");
  if (root["max_episode_steps"]) {
    config.max_episode_steps = scalar<int>(root["max_episode_steps"], "max_episode_steps");
  }
  if (root["seed"] && !root["seed"].IsNull()) {
    config.seed = scalar<std::uint64_t>(root["seed"], "seed");
  }
  if (root["agents"]) {
    const auto& list = root["agents"];
    if (!list.IsSequence()) throw Error(ErrorCode::kParse, "agents must be a list");
    std::vector<AgentPlacement> agents;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string field = "agents[" + std::to_string(i) + "]";
      const auto& entry = list[i];
      if (!entry.IsMap() || !entry["start"] || !entry["goal"] || entry.size() != 2) {
        throw Error(ErrorCode::kParse, field + " must have exactly the keys start and goal");
      }
      agents.push_back({parse_cell(entry["start"], field + ".start"),
                        parse_cell(entry["goal"], field + ".goal")});
    }
    config.num_agents = static_cast<int>(agents.size());
    config.agents = std::move(agents);
  }
  if (root["num_agents"]) config.num_agents = scalar<int>(root["num_agents"], "num_agents");

  require_valid(config);
  return config;
}

GridConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_config(buffer.str());
}

std::string dump_config(const GridConfig& config) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "size" << YAML::Value << config.size;
  out << YAML::Key << "density" << YAML::Value << YAML::Precision(17) << config.density;
  out << YAML::Key << "num_agents" << YAML::Value << config.num_agents;
  out << YAML::Key << "obs_radius" << YAML::Value << config.obs_radius;
  out << YAML::Key << "max_episode_steps" << YAML::Value << config.max_episode_steps;
  if (config.seed) out << YAML::Key << "seed" << YAML::Value << *config.seed;
  if (config.map) {
    out << YAML::Key << "map" << YAML::Value << YAML::Literal << map_to_text(*config.map);
  }
  if (config.agents) {
    out << YAML::Key << "agents" << YAML::Value << YAML::BeginSeq;
    for (const auto& a : *config.agents) {
      out << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "start" << YAML::Value << YAML::Flow << YAML::BeginSeq << a.start.row
          << a.start.col << YAML::EndSeq;
      out << YAML::Key << "goal" << YAML::Value << YAML::Flow << YAML::BeginSeq << a.goal.row
          << a.goal.col << YAML::EndSeq;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace pomapf
