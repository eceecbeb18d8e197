#pragma once

#include "eaforage/config.hpp"
#include "eaforage/types.hpp"

namespace eaforage::energy {

struct UtilityValue {
  RobotId robot_id = 0;
  TreasureId treasure_id = 0;
  double value = 0.0;
  // Robot can afford travel plus delivery; infeasible entries are never bid.
  bool feasible = false;
};

/// Predicted cost of the pickup-and-deliver leg: alpha + beta * |treasure - bin| + gamma.
double treasure_cost(const TreasureRecord& treasure, Vec2 bin_position, const EnergyParams& params);

/// Predicted energy to drive from the robot's pose to `target`: motion cost
/// plus static drain over the ceil(d / speed) ticks the transit takes.
double travel_energy(const RobotRecord& robot, Vec2 target, const EnergyParams& params, double speed);

/// value - (travel_energy + treasure_cost); feasible iff energy covers both.
UtilityValue utility(const RobotRecord& robot, const TreasureRecord& treasure,
                     const EnergyParams& params, double speed);

/// One tick of consumption, floored at zero (zero means the robot died).
double energy_tick(double e, double distance_moved, bool picked, const EnergyParams& params);

/// One tick on a station, capped at e_max.
double recharge_tick(double e, const EnergyParams& params);

}  // namespace eaforage::energy
