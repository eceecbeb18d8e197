#include <doctest.h>

#include "eaforage/energy.hpp"

using namespace eaforage;
using namespace eaforage::energy;

namespace {

TreasureRecord treasure_at(Vec2 p, Vec2 bin, double value) {
  TreasureRecord t;
  t.position = p;
  t.bin_position = bin;
  t.value = value;
  return t;
}

RobotRecord robot_at(Vec2 p, double energy) {
  RobotRecord r;
  r.pose = {p.x, p.y, 0.0};
  r.energy = energy;
  return r;
}

}  // namespace

TEST_CASE("treasure cost") {
  const EnergyParams p;
  CHECK(treasure_cost(treasure_at({1, 1}, {1, 1}, 1), {1, 1}, p) == doctest::Approx(0.2));
  CHECK(treasure_cost(treasure_at({0, 0}, {1, 0}, 1), {1, 0}, p) == doctest::Approx(2.2));
  EnergyParams zero;
  zero.alpha = zero.beta = zero.gamma = 0.0;
  CHECK(treasure_cost(treasure_at({0, 0}, {3, 4}, 1), {3, 4}, zero) == 0.0);
}

TEST_CASE("travel energy") {
  const EnergyParams p;
  CHECK(travel_energy(robot_at({0, 0}, 100), {0, 0}, p, 0.1) == 0.0);
  CHECK(travel_energy(robot_at({0, 0}, 100), {0.5, 0}, p, 0.1) == doctest::Approx(1.5));
}

TEST_CASE("utility and feasibility") {
  const EnergyParams p;
  // tau = 1.5 (0.5 m at 0.1 m/tick), c = 2.2 (1 m leg)
  const auto t = treasure_at({0.5, 0}, {1.5, 0}, 10.0);
  const auto u = utility(robot_at({0, 0}, 50), t, p, 0.1);
  CHECK(u.value == doctest::Approx(6.3));
  CHECK(u.feasible);
  CHECK(utility(robot_at({0, 0}, 3.7 + 1e-9), t, p, 0.1).feasible);
  CHECK_FALSE(utility(robot_at({0, 0}, 3.69), t, p, 0.1).feasible);

  const auto here = treasure_at({1, 1}, {1, 1}, 7.0);
  CHECK(utility(robot_at({1, 1}, 100), here, p, 0.1).value == doctest::Approx(7.0 - 0.2));
}

TEST_CASE("energy and recharge ticks") {
  const EnergyParams p;
  CHECK(energy_tick(100, 0.5, false, p) == doctest::Approx(98.9));
  CHECK(energy_tick(100, 0.0, false, p) == doctest::Approx(99.9));
  CHECK(energy_tick(100, 0.0, true, p) == doctest::Approx(99.8));
  CHECK(energy_tick(0.05, 1.0, false, p) == 0.0);
  CHECK(recharge_tick(50, p) == doctest::Approx(50.5));
  CHECK(recharge_tick(99.8, p) == 100.0);
  CHECK(recharge_tick(100, p) == 100.0);
}
