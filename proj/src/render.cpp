#include "pomapf/render.hpp"

#include <array>
#include <sstream>

#include "pomapf/error.hpp"

namespace pomapf {

namespace {

constexpr int kCellPx = 20;

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                  "#9467bd", "#8c564b", "#e377c2", "#17becf",
                                                  "#bcbd22", "#7f7f7f"};

const TraceTick& tick_at(const Trace& trace, std::size_t tick_index) {
  if (tick_index >= trace.ticks.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "trace has no tick " + std::to_string(tick_index));
  }
  return trace.ticks[tick_index];
}

}  // namespace

std::string render_ascii_frame(const Trace& trace, std::size_t tick_index) {
  const auto& tick = tick_at(trace, tick_index);
  std::vector<std::string> frame = trace.map.rows;
  for (std::size_t i = 0; i < trace.agents.size(); ++i) {
    if (!tick.active[i]) continue;
    const auto goal = trace.agents[i].goal;
    frame[goal.row][goal.col] = 'G';
  }
  for (std::size_t i = 0; i < trace.agents.size(); ++i) {
    if (!tick.active[i]) continue;
    const auto pos = tick.positions[i];
    frame[pos.row][pos.col] = 'A';
  }
  std::string out;
  for (const auto& line : frame) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string render_ascii(const Trace& trace) {
  std::string out;
  for (std::size_t t = 0; t < trace.ticks.size(); ++t) {
    if (t) out += '\n';
    out += render_ascii_frame(trace, t);
  }
  return out;
}

std::string render_svg_frame(const Trace& trace, std::size_t tick_index) {
  const auto& tick = tick_at(trace, tick_index);
  const int width = trace.cols * kCellPx;
  const int height = trace.rows * kCellPx;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<title>tick " << tick.tick << "</title>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";
  for (int r = 0; r < trace.rows; ++r) {
    for (int c = 0; c < trace.cols; ++c) {
      if (trace.map.rows[r][c] != '#') continue;
      svg << "<rect class=\"obstacle\" x=\"" << c * kCellPx << "\" y=\"" << r * kCellPx
          << "\" width=\"" << kCellPx << "\" height=\"" << kCellPx << "\" fill=\"#808080\"/>\n";
    }
  }
  const int side = (2 * trace.obs_radius + 1) * kCellPx;
  for (std::size_t i = 0; i < trace.agents.size(); ++i) {
    if (!tick.active[i]) continue;
    const char* colour = kPalette[i % kPalette.size()];
    const auto goal = trace.agents[i].goal;
    const auto pos = tick.positions[i];
    svg << "<rect class=\"goal\" x=\"" << goal.col * kCellPx + 3 << "\" y=\""
        << goal.row * kCellPx + 3 << "\" width=\"" << kCellPx - 6 << "\" height=\""
        << kCellPx - 6 << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    svg << "<rect class=\"view\" x=\"" << (pos.col - trace.obs_radius) * kCellPx << "\" y=\""
        << (pos.row - trace.obs_radius) * kCellPx << "\" width=\"" << side << "\" height=\""
        << side << "\" fill=\"" << colour << "\" fill-opacity=\"0.08\" stroke=\"" << colour
        << "\" stroke-dasharray=\"4 2\"/>\n";
    svg << "<circle class=\"agent\" cx=\"" << pos.col * kCellPx + kCellPx / 2 << "\" cy=\""
        << pos.row * kCellPx + kCellPx / 2 << "\" r=\"" << kCellPx / 2 - 2 << "\" fill=\""
        << colour << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace pomapf
