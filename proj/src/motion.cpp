#include "eaforage/motion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace eaforage::motion {

Vec2 Arena::clamp(Vec2 p) const {
  return {std::clamp(p.x, 0.0, width), std::clamp(p.y, 0.0, height)};
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a;
}

double bearing(Vec2 from, Vec2 to) { return std::atan2(to.y - from.y, to.x - from.x); }

double SimRng::uniform(double lo, double hi) {
  ++draws_;
  const double unit = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

StepResult step_toward(const Pose& pose, Vec2 target, double v_max, double turn_max, const Arena& arena) {
  const Vec2 here = pose.position();
  const double d = distance(here, target);
  if (d <= 0.0) return {pose, 0.0};

  const double b = bearing(here, target);
  const double turn = std::clamp(wrap_angle(b - pose.heading), -turn_max, turn_max);
  const double heading = wrap_angle(pose.heading + turn);
  const double err = wrap_angle(b - heading);
  const double forward = v_max * std::max(0.0, std::cos(err));

  Vec2 next;
  if (forward >= d && std::abs(err) < 1e-12) {
    next = target;
  } else {
    const double step = std::min(forward, d);
    next = {here.x + step * std::cos(heading), here.y + step * std::sin(heading)};
  }
  next = arena.clamp(next);
  return {{next.x, next.y, heading}, distance(here, next)};
}

double escape_heading(const Pose& self, const Pose& other, double noise_max, SimRng& rng) {
  const double away = bearing(other.position(), self.position());
  return wrap_angle(away + rng.uniform(-noise_max, noise_max));
}

namespace {

Vec2 end_of(const PlannedMove& m, const Arena& arena) {
  return arena.clamp({m.start.x + m.distance * std::cos(m.heading),
                      m.start.y + m.distance * std::sin(m.heading)});
}

}  // namespace

std::vector<MoveOutcome> collision_rule(std::vector<PlannedMove> moves, double safety_radius,
                                        const Arena& arena) {
  const std::size_t n = moves.size();
  std::vector<Vec2> end(n);
  for (std::size_t i = 0; i < n; ++i) end[i] = end_of(moves[i], arena);

  for (int pass = 0; pass < kCollisionPasses; ++pass) {
    std::vector<int> turn(n, 0);
    std::vector<bool> hit(n, false);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (moves[i].distance <= 0.0 && moves[j].distance <= 0.0) continue;
        if (distance(end[i], end[j]) >= safety_radius) continue;
        const bool i_lower = moves[i].id < moves[j].id;
        turn[i] += i_lower ? 1 : -1;
        turn[j] += i_lower ? -1 : 1;
        hit[i] = hit[j] = true;
        any = true;
      }
    }
    if (!any) break;
    for (std::size_t i = 0; i < n; ++i) {
      if (!hit[i] || moves[i].distance <= 0.0) continue;
      moves[i].distance *= 0.5;
      moves[i].heading = wrap_angle(moves[i].heading + (turn[i] >= 0 ? kDeflection : -kDeflection));
      end[i] = end_of(moves[i], arena);
    }
  }

  // Hard separation: hold offenders at their start until no pair ends
  // within half the safety radius. Start positions already satisfy this.
  std::vector<bool> held(n, false);
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (distance(end[i], end[j]) >= 0.5 * safety_radius) continue;
        for (std::size_t k : {i, j}) {
          if (held[k]) continue;
          held[k] = true;
          end[k] = moves[k].start.position();
          again = true;
        }
      }
    }
  }

  std::vector<MoveOutcome> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 start = moves[i].start.position();
    out.push_back({moves[i].id, {end[i].x, end[i].y, moves[i].heading}, distance(start, end[i])});
  }
  return out;
}

std::vector<std::pair<RobotId, RobotId>> detect_deadlocks(const std::vector<MotionAgent>& fleet,
                                                          DeadlockMonitor& monitor,
                                                          const WorldConfig& config) {
  const int window = config.deadlock_time_threshold;
  const double stuck_limit = 0.5 * config.robot_speed_max * window;

  std::set<RobotId> alive;
  for (const auto& a : fleet) {
    if (!a.alive) {
      monitor.history.erase(a.id);
      monitor.escapes.erase(a.id);
      continue;
    }
    alive.insert(a.id);
    auto& h = monitor.history[a.id];
    h.push_back(a.pose.position());
    while (static_cast<int>(h.size()) > window + 1) h.pop_front();
  }
  std::erase_if(monitor.proximity, [&](const auto& kv) {
    return !alive.count(kv.first.first) || !alive.count(kv.first.second);
  });

  auto displacement = [&](RobotId id) {
    const auto& h = monitor.history.at(id);
    if (static_cast<int>(h.size()) < window + 1) return std::numeric_limits<double>::infinity();
    return distance(h.front(), h.back());
  };

  std::vector<std::pair<RobotId, RobotId>> flagged;
  std::set<RobotId> flagged_ids;
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    const auto& a = fleet[i];
    if (!a.alive) continue;
    for (std::size_t j = i + 1; j < fleet.size(); ++j) {
      const auto& b = fleet[j];
      if (!b.alive) continue;
      const auto key = std::minmax(a.id, b.id);
      if (distance(a.pose.position(), b.pose.position()) >= config.deadlock_distance_threshold) {
        monitor.proximity.erase(key);
        continue;
      }
      int& count = monitor.proximity[key];
      ++count;
      if (count < window) continue;
      if (!a.goal && !b.goal) continue;
      if (!a.can_escape && !b.can_escape) continue;
      if (monitor.escapes.count(a.id) || monitor.escapes.count(b.id)) continue;
      if (flagged_ids.count(a.id) || flagged_ids.count(b.id)) continue;
      if (displacement(a.id) >= stuck_limit || displacement(b.id) >= stuck_limit) continue;
      flagged.push_back(key);
      flagged_ids.insert({a.id, b.id});
      count = 0;
    }
  }
  std::sort(flagged.begin(), flagged.end());
  return flagged;
}

MotionTick advance(const std::vector<MotionAgent>& agents, DeadlockMonitor& monitor,
                   const WorldConfig& config, SimRng& rng, bool avoidance) {
  const Arena arena{config.arena_width, config.arena_height};
  std::vector<PlannedMove> planned;
  planned.reserve(agents.size());
  for (const auto& a : agents) {
    PlannedMove m{a.id, a.pose, a.pose.heading, 0.0};
    if (a.alive) {
      std::optional<Vec2> aim = a.goal;
      if (auto esc = monitor.escapes.find(a.id); avoidance && esc != monitor.escapes.end()) {
        aim = Vec2{a.pose.x + std::cos(esc->second.heading), a.pose.y + std::sin(esc->second.heading)};
        if (--esc->second.ticks_remaining <= 0) monitor.escapes.erase(esc);
      }
      if (aim) {
        const auto step = step_toward(a.pose, *aim, config.robot_speed_max, config.turn_rate_max, arena);
        m.heading = step.pose.heading;
        m.distance = step.moved;
      }
    }
    planned.push_back(m);
  }

  MotionTick out;
  out.moves = collision_rule(std::move(planned), config.safety_radius, arena);
  if (!avoidance) return out;

  std::vector<MotionAgent> after = agents;
  for (std::size_t i = 0; i < after.size(); ++i) after[i].pose = out.moves[i].end;
  out.deadlocks = detect_deadlocks(after, monitor, config);

  std::map<RobotId, Pose> pose_of;
  for (const auto& a : after) pose_of[a.id] = a.pose;
  std::map<RobotId, bool> can_escape;
  for (const auto& a : after) can_escape[a.id] = a.can_escape;
  for (const auto& [i, j] : out.deadlocks) {
    // A docked partner stays put; only the mobile robot backs off.
    if (can_escape[i])
      monitor.escapes[i] = {escape_heading(pose_of[i], pose_of[j], config.deadlock_noise_max, rng),
                            config.escape_duration};
    if (can_escape[j])
      monitor.escapes[j] = {escape_heading(pose_of[j], pose_of[i], config.deadlock_noise_max, rng),
                            config.escape_duration};
  }
  return out;
}

}  // namespace eaforage::motion
