#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eaforage/motion.hpp"

using namespace eaforage;
using namespace eaforage::motion;

namespace {

const Arena kArena{10.0, 10.0};

MotionAgent agent(RobotId id, Vec2 p, std::optional<Vec2> goal) {
  MotionAgent a;
  a.id = id;
  a.pose = {p.x, p.y, 0.0};
  a.goal = goal;
  return a;
}

}  // namespace

TEST_CASE("step toward") {
  SUBCASE("already at the target") {
    const auto s = step_toward({1, 1, 0}, {1, 1}, 0.04, 1.5, kArena);
    CHECK(s.moved == 0.0);
  }
  SUBCASE("dead ahead moves the full step") {
    const auto s = step_toward({1, 1, 0}, {2, 1}, 0.04, 1.5, kArena);
    CHECK(s.moved == doctest::Approx(0.04));
    CHECK(s.pose.x == doctest::Approx(1.04));
  }
  SUBCASE("target behind cannot be reached in one tick") {
    const auto s = step_toward({1, 1, 0}, {0, 1}, 0.04, 1.5, kArena);
    CHECK(s.moved < 0.04);
  }
  SUBCASE("never overshoots") {
    const auto s = step_toward({1, 1, 0}, {1.01, 1}, 0.04, 1.5, kArena);
    CHECK(s.pose.x == doctest::Approx(1.01));
  }
  SUBCASE("stays inside the arena") {
    const auto s = step_toward({0.01, 1, std::numbers::pi}, {-1, 1}, 0.04, 1.5, kArena);
    CHECK(s.pose.x >= 0.0);
  }
}

TEST_CASE("wrap angle") {
  CHECK(std::abs(wrap_angle(3 * std::numbers::pi)) == doctest::Approx(std::numbers::pi));
  CHECK(std::abs(wrap_angle(2 * std::numbers::pi)) < 1e-12);
  CHECK(wrap_angle(-0.5) == doctest::Approx(-0.5));
}

TEST_CASE("parked pair is flagged after the time threshold") {
  WorldConfig c;
  DeadlockMonitor m;
  const std::vector<MotionAgent> fleet{agent(0, {1, 1}, Vec2{1, 1}), agent(1, {1.1, 1}, Vec2{1.1, 1})};
  int first = -1;
  for (int t = 1; t <= c.deadlock_time_threshold + 5 && first < 0; ++t)
    if (!detect_deadlocks(fleet, m, c).empty()) first = t;
  CHECK(first >= c.deadlock_time_threshold);
  CHECK(first <= c.deadlock_time_threshold + 1);
}

TEST_CASE("parked pair without goals or without escape is not flagged") {
  WorldConfig c;
  for (int variant = 0; variant < 3; ++variant) {
    DeadlockMonitor m;
    auto a = agent(0, {1, 1}, Vec2{1, 1});
    auto b = agent(1, {1.1, 1}, Vec2{1.1, 1});
    if (variant == 0) a.goal = b.goal = std::nullopt;
    if (variant == 1) a.can_escape = b.can_escape = false;
    if (variant == 2) b.alive = false;
    bool any = false;
    for (int t = 0; t < 3 * c.deadlock_time_threshold; ++t) any |= !detect_deadlocks({a, b}, m, c).empty();
    CHECK_FALSE(any);
  }
}

TEST_CASE("robots passing each other are not flagged") {
  WorldConfig c;
  DeadlockMonitor m;
  bool any = false;
  for (int t = 0; t < 60; ++t) {
    const double x = 0.04 * t;
    any |= !detect_deadlocks({agent(0, {x, 1}, Vec2{5, 1}), agent(1, {x, 1.1}, Vec2{5, 1.1})}, m, c).empty();
  }
  CHECK_FALSE(any);
}

TEST_CASE("escape heading") {
  SimRng rng(3);
  CHECK(escape_heading({0, 0, 0}, {0, 1, 0}, 0.0, rng) == doctest::Approx(-std::numbers::pi / 2));
  const double noise = std::numbers::pi / 6;
  for (int i = 0; i < 1000; ++i) {
    const double h = escape_heading({0, 0, 0}, {-1, 0, 0}, noise, rng);
    CHECK(std::abs(h) <= noise + 1e-12);
  }
  CHECK(rng.draws() == 1001);
}

TEST_CASE("rng is reproducible") {
  SimRng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 10; ++i) {
    const double x = a.uniform(-1, 1);
    CHECK(x == b.uniform(-1, 1));
    differs |= x != c.uniform(-1, 1);
  }
  CHECK(differs);
}

TEST_CASE("collision rule keeps robots apart") {
  const double sr = 0.12;
  SimRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    // Spawn at least sr apart, then aim everyone at a common point.
    std::vector<PlannedMove> moves;
    while (moves.size() < 6) {
      const Vec2 p{rng.uniform(0.8, 1.2), rng.uniform(0.8, 1.2)};
      bool ok = true;
      for (const auto& m : moves) ok &= distance(m.start.position(), p) >= sr;
      if (!ok) continue;
      const double h = bearing(p, {1, 1});
      moves.push_back({static_cast<RobotId>(moves.size()), {p.x, p.y, h}, h, 0.04});
    }
    const auto out = collision_rule(moves, sr, kArena);
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j)
        CHECK(distance(out[i].end.position(), out[j].end.position()) >= 0.5 * sr);
  }
}

TEST_CASE("advance assigns escapes only to mobile robots") {
  WorldConfig c;
  DeadlockMonitor m;
  SimRng rng(5);
  auto docked = agent(0, {1, 1}, Vec2{1, 1});
  docked.can_escape = false;
  // The mover's goal is on the far side of the docked robot, so it stalls.
  const auto mover = agent(1, {1.1, 1}, Vec2{0.9, 1});
  std::vector<MotionAgent> fleet{docked, mover};
  bool escaped = false;
  for (int t = 0; t < 3 * c.deadlock_time_threshold && !escaped; ++t) {
    const auto tick = advance(fleet, m, c, rng, true);
    for (std::size_t i = 0; i < fleet.size(); ++i) fleet[i].pose = tick.moves[i].end;
    if (!tick.deadlocks.empty()) {
      escaped = true;
      CHECK(m.escapes.count(1));
      CHECK_FALSE(m.escapes.count(0));
    }
  }
  CHECK(escaped);
}
