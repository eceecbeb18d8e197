#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace eaforage {

using RobotId = int;
using TreasureId = int;
using StationId = int;
using Tick = std::int64_t;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // radians, counter-clockwise from +x

  Vec2 position() const { return {x, y}; }
};

/// Robot lifecycle. The four foraging states (idle, recharging, pickup,
/// going to recharge/treasure) are split into the explicit states needed to
/// account for waiting, delivery, reconnection and death.
enum class RobotState {
  Idle,
  GoingToTreasure,
  PickingUp,
  Delivering,
  GoingToRecharge,
  Recharging,
  WaitingForCharger,
  Reconnecting,
  Dead,
};

std::string_view to_string(RobotState s);
std::optional<RobotState> robot_state_from_string(std::string_view s);

/// True iff `from -> to` is an edge of the engine's transition table.
/// Self-loops are not transitions and return false.
bool is_legal_transition(RobotState from, RobotState to);

/// States in which the robot has somewhere to drive to.
bool is_mobile_state(RobotState s);

enum class Strategy { Proposed, ProposedNoDeadlock, ProposedNoConnectivity, Baseline };

std::string_view to_string(Strategy s);
std::optional<Strategy> strategy_from_string(std::string_view s);

inline bool uses_deadlock_avoidance(Strategy s) {
  return s == Strategy::Proposed || s == Strategy::ProposedNoConnectivity;
}
inline bool uses_connectivity_maintenance(Strategy s) {
  return s == Strategy::Proposed || s == Strategy::ProposedNoDeadlock;
}

struct Target {
  enum class Kind { Treasure, Station };
  Kind kind = Kind::Treasure;
  int id = 0;

  friend bool operator==(const Target&, const Target&) = default;
};

struct NeighborObservation {
  Vec2 position;
  Tick tick = 0;
};

struct RobotRecord {
  RobotId id = 0;
  Pose pose;
  double energy = 100.0;  // percent of capacity
  RobotState state = RobotState::Idle;
  std::optional<Target> assignment;
  double claim_utility = 0.0;  // utility the current treasure claim was won with
  std::map<RobotId, NeighborObservation> last_neighbor_snapshot;

  // Bookkeeping for the fleet averages.
  Tick task_started = 0;
  double task_start_energy = 0.0;
  Tick charge_started = 0;
  Tick waiting_since = 0;

  bool alive() const { return state != RobotState::Dead; }
  std::optional<TreasureId> treasure_claim() const {
    if (assignment && assignment->kind == Target::Kind::Treasure) return assignment->id;
    return std::nullopt;
  }
};

enum class TreasureStatus { Available, Assigned, Carried };

struct TreasureRecord {
  TreasureId id = 0;
  Vec2 position;
  double value = 1.0;
  Vec2 bin_position;  // nearest bin, fixed at config time
  TreasureStatus status = TreasureStatus::Available;
  std::optional<RobotId> holder;  // set for Assigned / Carried
  Tick available_from = 0;        // respawn guard: not biddable before this tick

  bool is_available(Tick now) const {
    return status == TreasureStatus::Available && available_from <= now;
  }
};

struct StationRecord {
  StationId id = 0;
  Vec2 position;
  std::optional<RobotId> occupant;     // robot currently Recharging here
  std::optional<RobotId> reserved_by;  // robot driving here or waiting for it

  bool is_free() const { return !occupant && !reserved_by; }
};

}  // namespace eaforage
