#include "eaforage/energy.hpp"

#include <algorithm>
#include <cmath>

namespace eaforage::energy {

double treasure_cost(const TreasureRecord& treasure, Vec2 bin_position, const EnergyParams& params) {
  return params.alpha + params.beta * distance(treasure.position, bin_position) + params.gamma;
}

double travel_energy(const RobotRecord& robot, Vec2 target, const EnergyParams& params, double speed) {
  const double d = distance(robot.pose.position(), target);
  if (d <= 0.0) return 0.0;
  return params.beta * d + params.alpha * std::ceil(d / speed);
}

UtilityValue utility(const RobotRecord& robot, const TreasureRecord& treasure,
                     const EnergyParams& params, double speed) {
  const double need = travel_energy(robot, treasure.position, params, speed) +
                      treasure_cost(treasure, treasure.bin_position, params);
  return {robot.id, treasure.id, treasure.value - need, robot.energy >= need};
}

double energy_tick(double e, double distance_moved, bool picked, const EnergyParams& params) {
  const double drain = params.alpha + params.beta * distance_moved + (picked ? params.gamma : 0.0);
  return std::max(0.0, e - drain);
}

double recharge_tick(double e, const EnergyParams& params) {
  return std::min(e + params.delta, params.e_max);
}

}  // namespace eaforage::energy
