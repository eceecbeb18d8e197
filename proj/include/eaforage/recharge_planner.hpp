#pragma once

#include <variant>
#include <vector>

#include "eaforage/config.hpp"
#include "eaforage/types.hpp"

namespace eaforage::planner {

struct FleetAverages {
  double avg_task_energy = 3.0;     // percent per task
  double avg_task_time = 60.0;      // ticks per task
  double avg_recharge_time = 160.0; // ticks per charge

  static FleetAverages from_config(const WorldConfig& c) {
    return {c.avg_task_energy, c.avg_task_time, c.avg_recharge_time};
  }
};

struct TaskCompleted {
  double energy_spent = 0.0;
  double ticks = 0.0;
};
struct RechargeCompleted {
  double ticks = 0.0;
};
using AveragesEvent = std::variant<TaskCompleted, RechargeCompleted>;

inline constexpr double kAveragesSmoothing = 0.2;

/// Exponential moving average update of the field(s) the event observes.
/// Non-positive observations are ignored.
FleetAverages update_averages(FleetAverages avgs, const AveragesEvent& event);

struct RechargePlan {
  std::vector<RobotId> robot_ids;  // in priority order (lowest energy first)
  std::vector<RobotId> held;       // due now but carrying a treasure; a station is kept for them
  Tick computed_at = 0;
};

/// ceil(robots / stations): episodes needed to cycle the fleet through the stations.
int predict_episodes(int n_robots, int n_stations);

/// ceil(avg_recharge_time / avg_task_time): tasks a robot could finish in one charge time.
int task_recharge_ratio(const FleetAverages& avgs);

/// Predicted consumption over one episode: ratio * avg_task_energy.
double episode_consumption(const FleetAverages& avgs);

/// e_min plus one episode of consumption.
double danger_level(const FleetAverages& avgs, const EnergyParams& params);

/// Charge-stop level: danger + two episodes, capped at e_max.
double charge_stop_level(const FleetAverages& avgs, const EnergyParams& params);

/// First episode (0-based, up to the horizon) at which the robot's predicted
/// energy drops below the danger level; -1 if it stays above for the whole horizon.
int danger_episode(double energy, int horizon, const FleetAverages& avgs, const EnergyParams& params);

/// Robots the planner may send to a station this tick.
bool plannable(RobotState s);

/// Robots mid-delivery: queued by energy like the others, but a robot that is
/// due only holds a station slot until it has dropped its treasure.
bool deferrable(RobotState s);

/// Selects robots that must head to a station now.
///
/// Every alive, plannable or deferrable robot gets a predicted energy trajectory over
/// ceil(n / stations) episodes. Robots are queued lowest energy first (ties by
/// id). A robot at queue position q can be served no earlier than episode
/// floor((q + taken) / stations) + 1, where `taken` counts stations already
/// occupied or reserved; it is planned when its danger episode is at or before
/// that point. The plan is a prefix of the queue, at most one robot per free
/// station; held robots count against the free stations.
RechargePlan plan(const std::vector<RobotRecord>& fleet, const std::vector<StationRecord>& stations,
                  const FleetAverages& avgs, const EnergyParams& params, Tick now = 0);

}  // namespace eaforage::planner
