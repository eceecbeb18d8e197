#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "eaforage/types.hpp"

namespace eaforage::trace {

/// Column order of every record.
inline constexpr std::string_view kColumns = "tick,robot,x,y,heading,energy,state,assignment,event";

/// Fixed 6-decimal formatting used for pose and energy columns.
std::string fixed6(double v);
/// Round-trip formatting used for ledger entries inside the event column.
std::string exact(double v);

/// Builds the line-delimited trace. Per-robot tick rows carry the energy
/// ledger in the event column as "moved=..;drain=..;gain=..", exact to the
/// last bit; event rows carry "kind:detail".
class TraceWriter {
 public:
  void header(std::string_view config_hash, std::uint64_t seed, std::string_view strategy,
              double initial_energy);
  void robot_row(Tick tick, const RobotRecord& r, double moved, double drain, double gain);
  void event_row(Tick tick, const RobotRecord& r, std::string_view event);
  void end_row(Tick tick, std::string_view reason);

  const std::string& str() const { return buf_; }

 private:
  void row(Tick tick, RobotId robot, const Pose& pose, double energy, std::string_view state,
           std::string_view assignment, std::string_view event);
  std::string buf_;
};

struct TraceRow {
  Tick tick = 0;
  RobotId robot = 0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  double energy = 0.0;
  std::string state;
  std::string assignment;
  std::string event;

  bool is_robot_row() const { return event.rfind("moved=", 0) == 0; }
  /// key=value tokens of a ledger event ("moved", "drain", "gain").
  std::map<std::string, double> ledger() const;
};

struct ParsedTrace {
  std::map<std::string, std::string> header;  // key=value pairs of the '#' line
  std::vector<TraceRow> rows;
};

ParsedTrace parse(std::string_view text);

std::string assignment_label(const RobotRecord& r);

}  // namespace eaforage::trace
