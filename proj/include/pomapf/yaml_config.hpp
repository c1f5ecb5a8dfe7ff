#pragma once

#include <string>
#include <string_view>

#include "pomapf/core.hpp"

namespace pomapf {

/// Reads a config document. Keys: size, density, num_agents, obs_radius,
/// max_episode_steps, seed, map (multi-line grid text), agents (list of
/// {start: [row, col], goal: [row, col]}). Missing keys take the 8x8-easy
/// defaults; num_agents defaults to the agents list length when one is given.
/// Unknown keys and malformed values throw Error(kParse); a config that fails
/// validate_config throws Error(kValidation) naming the field.
GridConfig load_config(std::string_view yaml_text);
GridConfig load_config_file(const std::string& path);

/// Inverse of load_config for every valid config.
std::string dump_config(const GridConfig& config);

}  // namespace pomapf
