#pragma once

#include <string>

#include "pomapf/trace.hpp"

namespace pomapf {

/// Legend: '#' obstacle, '.' free, 'A' active agent, 'G' goal of an active agent.
/// One line per grid row, newline-terminated.
std::string render_ascii_frame(const Trace& trace, std::size_t tick_index);

/// Every frame, separated by one blank line.
std::string render_ascii(const Trace& trace);

/// Standalone SVG: gray obstacles, coloured agents and their goals, and the
/// (2R+1)x(2R+1) observation square around each active agent.
std::string render_svg_frame(const Trace& trace, std::size_t tick_index);

}  // namespace pomapf
