#include "eaforage/recharge_planner.hpp"

#include <algorithm>
#include <cmath>

namespace eaforage::planner {

FleetAverages update_averages(FleetAverages avgs, const AveragesEvent& event) {
  auto ema = [](double old, double observed) {
    return (1.0 - kAveragesSmoothing) * old + kAveragesSmoothing * observed;
  };
  if (const auto* task = std::get_if<TaskCompleted>(&event)) {
    if (task->energy_spent > 0.0) avgs.avg_task_energy = ema(avgs.avg_task_energy, task->energy_spent);
    if (task->ticks > 0.0) avgs.avg_task_time = ema(avgs.avg_task_time, task->ticks);
  } else if (const auto* charge = std::get_if<RechargeCompleted>(&event)) {
    if (charge->ticks > 0.0) avgs.avg_recharge_time = ema(avgs.avg_recharge_time, charge->ticks);
  }
  return avgs;
}

int predict_episodes(int n_robots, int n_stations) {
  if (n_stations <= 0) return 0;
  return (n_robots + n_stations - 1) / n_stations;
}

int task_recharge_ratio(const FleetAverages& avgs) {
  return static_cast<int>(std::ceil(avgs.avg_recharge_time / avgs.avg_task_time));
}

double episode_consumption(const FleetAverages& avgs) {
  return task_recharge_ratio(avgs) * avgs.avg_task_energy;
}

double danger_level(const FleetAverages& avgs, const EnergyParams& params) {
  return params.e_min + episode_consumption(avgs);
}

double charge_stop_level(const FleetAverages& avgs, const EnergyParams& params) {
  return std::min(params.e_max, danger_level(avgs, params) + 2.0 * episode_consumption(avgs));
}

int danger_episode(double energy, int horizon, const FleetAverages& avgs, const EnergyParams& params) {
  const double danger = danger_level(avgs, params);
  const double step = episode_consumption(avgs);
  for (int i = 0; i <= horizon; ++i)
    if (energy - i * step < danger) return i;
  return -1;
}

bool plannable(RobotState s) {
  return s == RobotState::Idle || s == RobotState::GoingToTreasure || s == RobotState::Reconnecting;
}

bool deferrable(RobotState s) { return s == RobotState::PickingUp || s == RobotState::Delivering; }

RechargePlan plan(const std::vector<RobotRecord>& fleet, const std::vector<StationRecord>& stations,
                  const FleetAverages& avgs, const EnergyParams& params, Tick now) {
  RechargePlan out;
  out.computed_at = now;
  const int n_stations = static_cast<int>(stations.size());
  if (n_stations == 0) return out;

  int alive = 0;
  std::vector<const RobotRecord*> queue;
  for (const auto& r : fleet) {
    if (!r.alive()) continue;
    ++alive;
    if (plannable(r.state) || deferrable(r.state)) queue.push_back(&r);
  }
  const int free = static_cast<int>(
      std::count_if(stations.begin(), stations.end(), [](const StationRecord& s) { return s.is_free(); }));
  const int taken = n_stations - free;
  const int horizon = predict_episodes(alive, n_stations);

  std::sort(queue.begin(), queue.end(), [](const RobotRecord* a, const RobotRecord* b) {
    if (a->energy != b->energy) return a->energy < b->energy;
    return a->id < b->id;
  });

  for (std::size_t q = 0; q < queue.size() && static_cast<int>(out.robot_ids.size() + out.held.size()) < free;
       ++q) {
    const int band = danger_episode(queue[q]->energy, horizon, avgs, params);
    const int served_at = (static_cast<int>(q) + taken) / n_stations + 1;
    // The plan is a prefix of the queue so priority stays lowest-energy first.
    if (band < 0 || band > served_at) break;
    if (deferrable(queue[q]->state)) out.held.push_back(queue[q]->id);
    else out.robot_ids.push_back(queue[q]->id);
  }
  return out;
}

}  // namespace eaforage::planner
