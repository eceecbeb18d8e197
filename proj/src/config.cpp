#include "eaforage/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace eaforage {

using json = nlohmann::json;

namespace {

bool inside(const WorldConfig& c, Vec2 p) {
  return p.x >= 0.0 && p.x <= c.arena_width && p.y >= 0.0 && p.y <= c.arena_height;
}

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 vec_from(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(std::string("'") + key + "' entries must be [x, y] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Vec2> vec_list(const json& j, const char* key) {
  if (!j.is_array()) fail(std::string("'") + key + "' must be a list");
  std::vector<Vec2> out;
  for (const auto& e : j) out.push_back(vec_from(e, key));
  return out;
}

template <class T>
T number(const json& j, const char* key) {
  if (!j.is_number()) fail(std::string("'") + key + "' must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) fail(std::string("'") + key + "' must be an integer");
  }
  return j.get<T>();
}

}  // namespace

WorldConfig validate_config(const WorldConfig& c) {
  if (c.n_robots < 1 || c.n_stations < 1 || c.treasures.empty() || c.bins.empty())
    fail("counts >= 1 violated (n_robots, n_stations, treasures, bins)");
  if (!(c.arena_width > 0.0) || !(c.arena_height > 0.0)) fail("arena dimensions must be > 0");
  if (static_cast<int>(c.stations.size()) != c.n_stations)
    fail("n_stations does not match the number of station positions");
  if (!c.robot_starts.empty() && static_cast<int>(c.robot_starts.size()) != c.n_robots)
    fail("n_robots does not match the number of robot_starts");
  for (const auto& t : c.treasures) {
    if (!inside(c, t.position)) fail("treasure position outside arena");
    if (!(t.value > 0.0)) fail("treasure value must be > 0");
  }
  for (const auto& b : c.bins)
    if (!inside(c, b)) fail("bin position outside arena");
  for (const auto& s : c.stations)
    if (!inside(c, s)) fail("station position outside arena");
  for (const auto& p : c.robot_starts)
    if (!inside(c, p)) fail("robot start position outside arena");
  for (std::size_t i = 0; i < c.stations.size(); ++i)
    for (std::size_t j = i + 1; j < c.stations.size(); ++j)
      if (c.stations[i] == c.stations[j]) fail("station positions must be pairwise distinct");
  if (!(c.comm_radius > 0.0)) fail("comm_radius must be > 0");
  if (!(c.robot_speed_max > 0.0)) fail("robot_speed_max must be > 0");
  if (!(c.turn_rate_max > 0.0)) fail("turn_rate_max must be > 0");
  if (!(c.safety_radius > 0.0)) fail("safety_radius must be > 0");
  if (c.deadlock_distance_threshold < 0.0 || c.deadlock_time_threshold < 1 ||
      c.deadlock_noise_max < 0.0 || c.escape_duration < 1)
    fail("deadlock parameters out of range");
  if (c.max_iterations < 0) fail("max_iterations must be >= 0");
  if (!(c.arrival_radius > 0.0)) fail("arrival_radius must be > 0");
  if (!(c.avg_task_energy > 0.0) || !(c.avg_task_time > 0.0) || !(c.avg_recharge_time > 0.0))
    fail("planner averages must be > 0");
  if (!(c.seconds_per_tick > 0.0)) fail("seconds_per_tick must be > 0");

  const auto& e = c.energy;
  if (e.alpha < 0.0 || e.beta < 0.0 || e.gamma < 0.0 || e.delta < 0.0)
    fail("energy coefficients must be >= 0");
  if (!(0.0 <= e.e_min && e.e_min < e.e_max && e.e_max <= 100.0))
    fail("energy bounds must satisfy 0 <= e_min < e_max <= 100");
  if (!(c.baseline_low_threshold < c.baseline_charge_stop && c.baseline_charge_stop <= e.e_max))
    fail("baseline thresholds must satisfy low < stop <= e_max");

  const auto starts = start_poses(c);
  for (std::size_t i = 0; i < starts.size(); ++i)
    for (std::size_t j = i + 1; j < starts.size(); ++j)
      if (distance(starts[i].position(), starts[j].position()) < 0.5 * c.safety_radius)
        fail("robot starts closer than half the safety radius");
  return c;
}

WorldConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("config root must be an object");

  WorldConfig c;
  c.treasures.clear();
  for (const auto& [key, v] : root.items()) {
    if (key == "arena_width") c.arena_width = number<double>(v, "arena_width");
    else if (key == "arena_height") c.arena_height = number<double>(v, "arena_height");
    else if (key == "n_robots") c.n_robots = number<int>(v, "n_robots");
    else if (key == "n_stations") c.n_stations = number<int>(v, "n_stations");
    else if (key == "treasures") {
      if (!v.is_array()) fail("'treasures' must be a list");
      for (const auto& t : v) {
        if (!t.is_object() || !t.contains("position") || !t.contains("value") || t.size() != 2)
          fail("'treasures' entries must be {\"position\": [x, y], \"value\": v}");
        c.treasures.push_back({vec_from(t["position"], "treasures"), number<double>(t["value"], "value")});
      }
    }
    else if (key == "bins") c.bins = vec_list(v, "bins");
    else if (key == "stations") c.stations = vec_list(v, "stations");
    else if (key == "comm_radius") c.comm_radius = number<double>(v, "comm_radius");
    else if (key == "robot_speed_max") c.robot_speed_max = number<double>(v, "robot_speed_max");
    else if (key == "turn_rate_max") c.turn_rate_max = number<double>(v, "turn_rate_max");
    else if (key == "safety_radius") c.safety_radius = number<double>(v, "safety_radius");
    else if (key == "deadlock_distance_threshold")
      c.deadlock_distance_threshold = number<double>(v, "deadlock_distance_threshold");
    else if (key == "deadlock_time_threshold")
      c.deadlock_time_threshold = number<int>(v, "deadlock_time_threshold");
    else if (key == "deadlock_noise_max") c.deadlock_noise_max = number<double>(v, "deadlock_noise_max");
    else if (key == "escape_duration") c.escape_duration = number<int>(v, "escape_duration");
    else if (key == "max_iterations") c.max_iterations = number<int>(v, "max_iterations");
    else if (key == "rng_seed") c.rng_seed = number<std::uint64_t>(v, "rng_seed");
    else if (key == "strategy") {
      if (!v.is_string()) fail("'strategy' must be a string");
      auto s = strategy_from_string(v.get<std::string>());
      if (!s) fail("unknown strategy '" + v.get<std::string>() + "'");
      c.strategy = *s;
    }
    else if (key == "alpha") c.energy.alpha = number<double>(v, "alpha");
    else if (key == "beta") c.energy.beta = number<double>(v, "beta");
    else if (key == "gamma") c.energy.gamma = number<double>(v, "gamma");
    else if (key == "delta") c.energy.delta = number<double>(v, "delta");
    else if (key == "e_max") c.energy.e_max = number<double>(v, "e_max");
    else if (key == "e_min") c.energy.e_min = number<double>(v, "e_min");
    else if (key == "robot_starts") c.robot_starts = vec_list(v, "robot_starts");
    else if (key == "arrival_radius") c.arrival_radius = number<double>(v, "arrival_radius");
    else if (key == "avg_task_energy") c.avg_task_energy = number<double>(v, "avg_task_energy");
    else if (key == "avg_task_time") c.avg_task_time = number<double>(v, "avg_task_time");
    else if (key == "avg_recharge_time") c.avg_recharge_time = number<double>(v, "avg_recharge_time");
    else if (key == "baseline_low_threshold")
      c.baseline_low_threshold = number<double>(v, "baseline_low_threshold");
    else if (key == "baseline_charge_stop")
      c.baseline_charge_stop = number<double>(v, "baseline_charge_stop");
    else if (key == "seconds_per_tick") c.seconds_per_tick = number<double>(v, "seconds_per_tick");
    else fail("unknown config key '" + key + "'");
  }
  return c;
}

WorldConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const WorldConfig& c) {
  json j;
  j["arena_width"] = c.arena_width;
  j["arena_height"] = c.arena_height;
  j["n_robots"] = c.n_robots;
  j["n_stations"] = c.n_stations;
  j["treasures"] = json::array();
  for (const auto& t : c.treasures)
    j["treasures"].push_back({{"position", vec_json(t.position)}, {"value", t.value}});
  j["bins"] = json::array();
  for (auto b : c.bins) j["bins"].push_back(vec_json(b));
  j["stations"] = json::array();
  for (auto s : c.stations) j["stations"].push_back(vec_json(s));
  j["comm_radius"] = c.comm_radius;
  j["robot_speed_max"] = c.robot_speed_max;
  j["turn_rate_max"] = c.turn_rate_max;
  j["safety_radius"] = c.safety_radius;
  j["deadlock_distance_threshold"] = c.deadlock_distance_threshold;
  j["deadlock_time_threshold"] = c.deadlock_time_threshold;
  j["deadlock_noise_max"] = c.deadlock_noise_max;
  j["escape_duration"] = c.escape_duration;
  j["max_iterations"] = c.max_iterations;
  j["rng_seed"] = c.rng_seed;
  j["strategy"] = std::string(to_string(c.strategy));
  j["alpha"] = c.energy.alpha;
  j["beta"] = c.energy.beta;
  j["gamma"] = c.energy.gamma;
  j["delta"] = c.energy.delta;
  j["e_max"] = c.energy.e_max;
  j["e_min"] = c.energy.e_min;
  if (!c.robot_starts.empty()) {
    j["robot_starts"] = json::array();
    for (auto p : c.robot_starts) j["robot_starts"].push_back(vec_json(p));
  }
  j["arrival_radius"] = c.arrival_radius;
  j["avg_task_energy"] = c.avg_task_energy;
  j["avg_task_time"] = c.avg_task_time;
  j["avg_recharge_time"] = c.avg_recharge_time;
  j["baseline_low_threshold"] = c.baseline_low_threshold;
  j["baseline_charge_stop"] = c.baseline_charge_stop;
  j["seconds_per_tick"] = c.seconds_per_tick;
  return j.dump(2);
}

std::string config_hash(const WorldConfig& c) {
  const std::string canonical = json::parse(dump_config(c)).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Pose> start_poses(const WorldConfig& c) {
  std::vector<Pose> out;
  if (!c.robot_starts.empty()) {
    for (auto p : c.robot_starts) out.push_back({p.x, p.y, 0.0});
    return out;
  }
  const int n = std::max(c.n_robots, 0);
  for (int i = 0; i < n; ++i) {
    const double x = c.arena_width * (i + 1) / (n + 1);
    out.push_back({x, 0.5 * c.arena_height, 0.0});
  }
  return out;
}

WorldConfig default_foraging_config() {
  WorldConfig c;
  // Treasures in the upper half, bins along the bottom edge, stations on the
  // side walls: every delivery is a ~1.2 m leg.
  c.treasures = {
      {{0.50, 1.60}, 2.0}, {{1.10, 1.30}, 4.0}, {{1.60, 1.70}, 5.0},
      {{2.10, 1.30}, 6.0}, {{2.70, 1.60}, 8.0},
  };
  c.bins = {{0.40, 0.15}, {1.00, 0.15}, {1.60, 0.15}, {2.20, 0.15}, {2.80, 0.15}};
  c.stations = {{0.15, 1.00}, {3.05, 1.00}};
  c.robot_starts = {{1.00, 1.00}, {1.30, 1.00}, {1.60, 1.00}, {1.90, 1.00}, {2.20, 1.00}};
  return c;
}

}  // namespace eaforage
