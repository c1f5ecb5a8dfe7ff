#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pomapf/core.hpp"
#include "pomapf/dynamics.hpp"

namespace pomapf {

/// Line-delimited JSON. The first line is a header object
///   {"type":"header","rows","cols","obs_radius","seed","map":[...],"agents":[{"start","goal"}]}
/// followed by one object per tick
///   {"type":"tick","tick","actions":[int],"positions":[[r,c]],"active":[0|1],"rewards":[float]}
/// recorded after the step was applied.
struct TraceTick {
  int tick = 0;
  std::vector<int> actions;
  std::vector<CellCoord> positions;
  std::vector<std::uint8_t> active;
  std::vector<double> rewards;

  friend bool operator==(const TraceTick&, const TraceTick&) = default;
};

struct Trace {
  int rows = 0;
  int cols = 0;
  int obs_radius = 0;
  std::uint64_t seed = 0;
  MapSpec map;
  std::vector<AgentPlacement> agents;
  std::vector<TraceTick> ticks;
};

class TraceWriter {
 public:
  explicit TraceWriter(std::ostream& out) : out_(out) {}

  void write_header(const Environment& env);
  void write_tick(const Environment& env, std::span<const Action> actions,
                  const StepOutcome& outcome);

 private:
  std::ostream& out_;
};

/// Throws Error(kParse) on malformed input.
Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);

}  // namespace pomapf
