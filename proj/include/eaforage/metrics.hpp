#pragma once

#include <array>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace eaforage::metrics {

/// The seven performance indices of one trial. Time indices are robot-ticks
/// (summed over the fleet); see to_display() for seconds.
struct MetricsRecord {
  double alive_robots_avg = 0.0;
  double total_distance = 0.0;
  double goto_recharge_time = 0.0;
  double recharging_time = 0.0;
  double wait_recharge_time = 0.0;
  long treasures_collected = 0;
  double treasure_value_total = 0.0;

  // Running state for the alive-count time average.
  long ticks = 0;
  double alive_tick_sum = 0.0;

  /// Zeroed record for a fleet of `n_robots`; with no ticks the alive
  /// average is the fleet size.
  static MetricsRecord start(int n_robots);
};

struct TickEvents {
  int alive = 0;
  std::vector<double> displacements;  // one per robot that moved
  int going_to_recharge = 0;
  int recharging = 0;
  int waiting = 0;
  std::vector<double> dropoff_values;
};

MetricsRecord accumulate(MetricsRecord m, const TickEvents& events);

inline constexpr std::size_t kIndexCount = 7;

/// Row labels in comparison-table order.
inline constexpr std::array<std::string_view, kIndexCount> kIndexLabels{
    "Average number of alive robots (units)",
    "Total distance traveled (m)",
    "Go-To recharging time (sec)",
    "Recharging time (sec)",
    "Wait-For recharging time (sec)",
    "Total number of treasures collected (units)",
    "Total treasure value achieved (units)",
};

/// Raw index values in row order (times in robot-ticks).
std::array<double, kIndexCount> index_values(const MetricsRecord& m);

struct IndexSummary {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation; 0 for a single trial
};

struct Summary {
  std::size_t trials = 0;
  std::array<IndexSummary, kIndexCount> rows{};
};

class EmptyAggregateError : public std::invalid_argument {
 public:
  EmptyAggregateError() : std::invalid_argument("aggregate needs at least one trial") {}
};

Summary aggregate(const std::vector<MetricsRecord>& trials);

/// Converts the three time rows from robot-ticks to seconds.
Summary to_display(Summary s, double seconds_per_tick);

}  // namespace eaforage::metrics
