#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "eaforage/types.hpp"

namespace eaforage {

/// Energy model coefficients, all in percent of battery capacity.
struct EnergyParams {
  double alpha = 0.1;  // static drain per tick
  double beta = 2.0;   // drain per meter driven
  double gamma = 0.1;  // drain per pickup
  double delta = 0.5;  // gain per tick on a station
  double e_max = 100.0;
  double e_min = 20.0;
};

struct TreasureSpec {
  Vec2 position;
  double value = 1.0;
};

struct WorldConfig {
  double arena_width = 3.2;
  double arena_height = 2.0;
  int n_robots = 5;
  int n_stations = 2;
  std::vector<TreasureSpec> treasures;
  std::vector<Vec2> bins;
  std::vector<Vec2> stations;
  double comm_radius = 1.0;
  double robot_speed_max = 0.04;   // m/tick
  double turn_rate_max = 1.5;      // rad/tick
  double safety_radius = 0.12;
  double deadlock_distance_threshold = 0.24;
  int deadlock_time_threshold = 20;
  double deadlock_noise_max = 0.5235987755982988;  // 30 degrees
  int escape_duration = 10;
  int max_iterations = 1000;
  std::uint64_t rng_seed = 1;
  Strategy strategy = Strategy::Proposed;
  EnergyParams energy;

  // Keys beyond the core set; every one has a default.
  std::vector<Vec2> robot_starts;  // empty: evenly spaced along the horizontal midline
  double arrival_radius = 0.15;
  double avg_task_energy = 3.0;
  double avg_task_time = 60.0;
  double avg_recharge_time = 160.0;
  double baseline_low_threshold = 30.0;
  double baseline_charge_stop = 60.0;
  double seconds_per_tick = 0.033;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Returns `config` unchanged when every invariant holds; otherwise throws
/// ConfigError naming the first violated one.
WorldConfig validate_config(const WorldConfig& config);

/// Parses the JSON config text. Unknown keys are rejected. Does not validate.
WorldConfig parse_config(const std::string& text);
WorldConfig load_config(const std::filesystem::path& path);
std::string dump_config(const WorldConfig& config);

/// FNV-1a over the canonical (sorted-key) JSON dump, as 16 hex digits.
std::string config_hash(const WorldConfig& config);

/// Start poses for the fleet (explicit or the default midline spread).
std::vector<Pose> start_poses(const WorldConfig& config);

/// Default foraging setup: 5 robots, 5 treasures, 5 bins, 2 stations.
WorldConfig default_foraging_config();

}  // namespace eaforage
