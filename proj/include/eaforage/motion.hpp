#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "eaforage/config.hpp"
#include "eaforage/types.hpp"

namespace eaforage::motion {

struct Arena {
  double width = 0.0;
  double height = 0.0;

  Vec2 clamp(Vec2 p) const;
};

double wrap_angle(double a);
double bearing(Vec2 from, Vec2 to);

/// Seeded engine stream. Draws are counted so traces can be compared
/// against the draw log.
class SimRng {
 public:
  explicit SimRng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [lo, hi], built from the top 53 bits (portable across stdlibs).
  double uniform(double lo, double hi);
  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 gen_;
  std::uint64_t draws_ = 0;
};

struct StepResult {
  Pose pose;
  double moved = 0.0;
};

/// Unicycle step: turn toward the target by at most `turn_max`, then drive
/// v_max * max(0, cos(remaining heading error)), never past the target.
StepResult step_toward(const Pose& pose, Vec2 target, double v_max, double turn_max, const Arena& arena);

/// Bearing from `other` to `self` plus uniform noise in [-noise_max, noise_max].
double escape_heading(const Pose& self, const Pose& other, double noise_max, SimRng& rng);

struct PlannedMove {
  RobotId id = 0;
  Pose start;
  double heading = 0.0;   // heading at the end of the tick
  double distance = 0.0;  // along `heading`
};

struct MoveOutcome {
  RobotId id = 0;
  Pose end;
  double moved = 0.0;
};

inline constexpr double kDeflection = 0.3490658503988659;  // 20 degrees
inline constexpr int kCollisionPasses = 3;

/// Proposed end positions closer than `safety_radius` make both robots halve
/// their step and turn 20 degrees (lower id left, higher id right), up to
/// three passes. Any robot still ending within half the safety radius of
/// another is then held at its start position.
std::vector<MoveOutcome> collision_rule(std::vector<PlannedMove> moves, double safety_radius,
                                        const Arena& arena);

struct Escape {
  double heading = 0.0;
  int ticks_remaining = 0;
};

struct DeadlockMonitor {
  std::map<std::pair<RobotId, RobotId>, int> proximity;  // consecutive ticks below threshold
  std::map<RobotId, Escape> escapes;
  std::map<RobotId, std::deque<Vec2>> history;  // last window+1 tick-end positions
};

struct MotionAgent {
  RobotId id = 0;
  Pose pose;
  bool alive = true;
  std::optional<Vec2> goal;  // nothing: holds position
  bool can_escape = true;    // docked robots (charging, picking up) stay put
};

/// Updates proximity counters with the agents' current positions and returns
/// the pairs that have been within the distance threshold for the time
/// threshold while both moved less than 0.5 * v_max * window. At least one of
/// the pair must have a goal and at least one must be free to escape; robots
/// already escaping are skipped.
std::vector<std::pair<RobotId, RobotId>> detect_deadlocks(const std::vector<MotionAgent>& fleet,
                                                          DeadlockMonitor& monitor,
                                                          const WorldConfig& config);

struct MotionTick {
  std::vector<MoveOutcome> moves;  // same order as the input agents
  std::vector<std::pair<RobotId, RobotId>> deadlocks;
};

/// One simultaneous motion update from the tick-start snapshot: goal seeking
/// (or escape headings), collision rule, then deadlock detection and escape
/// assignment when `avoidance` is on.
MotionTick advance(const std::vector<MotionAgent>& agents, DeadlockMonitor& monitor,
                   const WorldConfig& config, SimRng& rng, bool avoidance);

}  // namespace eaforage::motion
