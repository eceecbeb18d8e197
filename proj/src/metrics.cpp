#include "eaforage/metrics.hpp"

#include <cmath>

namespace eaforage::metrics {

MetricsRecord MetricsRecord::start(int n_robots) {
  MetricsRecord m;
  m.alive_robots_avg = n_robots;
  return m;
}

MetricsRecord accumulate(MetricsRecord m, const TickEvents& events) {
  ++m.ticks;
  m.alive_tick_sum += events.alive;
  m.alive_robots_avg = m.alive_tick_sum / static_cast<double>(m.ticks);
  for (double d : events.displacements) m.total_distance += d;
  m.goto_recharge_time += events.going_to_recharge;
  m.recharging_time += events.recharging;
  m.wait_recharge_time += events.waiting;
  for (double v : events.dropoff_values) {
    ++m.treasures_collected;
    m.treasure_value_total += v;
  }
  return m;
}

std::array<double, kIndexCount> index_values(const MetricsRecord& m) {
  return {m.alive_robots_avg,   m.total_distance,
          m.goto_recharge_time, m.recharging_time,
          m.wait_recharge_time, static_cast<double>(m.treasures_collected),
          m.treasure_value_total};
}

Summary aggregate(const std::vector<MetricsRecord>& trials) {
  if (trials.empty()) throw EmptyAggregateError();
  Summary s;
  s.trials = trials.size();
  const double n = static_cast<double>(trials.size());
  for (const auto& t : trials) {
    const auto v = index_values(t);
    for (std::size_t i = 0; i < kIndexCount; ++i) s.rows[i].mean += v[i];
  }
  for (auto& row : s.rows) row.mean /= n;
  if (trials.size() > 1) {
    for (const auto& t : trials) {
      const auto v = index_values(t);
      for (std::size_t i = 0; i < kIndexCount; ++i) {
        const double d = v[i] - s.rows[i].mean;
        s.rows[i].sd += d * d;
      }
    }
    for (auto& row : s.rows) row.sd = std::sqrt(row.sd / (n - 1.0));
  }
  return s;
}

Summary to_display(Summary s, double seconds_per_tick) {
  for (std::size_t i : {2u, 3u, 4u}) {
    s.rows[i].mean *= seconds_per_tick;
    s.rows[i].sd *= seconds_per_tick;
  }
  return s;
}

}  // namespace eaforage::metrics
