#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "eaforage/engine.hpp"

using namespace eaforage;

namespace {

WorldConfig cfg(const std::string& name) { return load_config(std::string(EAFORAGE_CONFIG_DIR) + "/" + name); }

long count_lines(const std::string& s) { return static_cast<long>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("initial state") {
  Engine e(default_foraging_config());
  CHECK(e.state().tick == 0);
  for (const auto& r : e.state().robots) {
    CHECK(r.state == RobotState::Idle);
    CHECK(r.energy == 100.0);
    CHECK_FALSE(r.assignment);
  }
  for (const auto& t : e.state().treasures) CHECK(t.status == TreasureStatus::Available);
  CHECK(e.check_invariants().empty());
}

TEST_CASE("zero iterations writes only the header") {
  auto c = default_foraging_config();
  c.max_iterations = 0;
  const auto r = run(c);
  CHECK(count_lines(r.trace) == 2);
  CHECK(r.metrics.alive_robots_avg == c.n_robots);
  CHECK(r.metrics.treasures_collected == 0);
}

TEST_CASE("invalid config is rejected") {
  auto c = default_foraging_config();
  c.n_stations = 0;
  c.stations.clear();
  CHECK_THROWS_AS(Engine{c}, ConfigError);
}

TEST_CASE("same seed, same trace; other seed, other trace") {
  for (Strategy s : {Strategy::Proposed, Strategy::Baseline}) {
    auto c = default_foraging_config();
    c.strategy = s;
    c.max_iterations = 300;
    const auto a = run(c);
    const auto b = run(c);
    CHECK(a.trace == b.trace);
    c.rng_seed = 2;
    CHECK(run(c).trace != a.trace);
  }
}

TEST_CASE("run stops at max_iterations") {
  auto c = default_foraging_config();
  c.max_iterations = 250;
  const auto r = run(c);
  CHECK(r.final_state.tick == 250);
  CHECK(r.metrics.ticks == 250);
}

TEST_CASE("invariants hold on every tick for every strategy") {
  for (Strategy s : {Strategy::Proposed, Strategy::ProposedNoDeadlock, Strategy::ProposedNoConnectivity,
                     Strategy::Baseline}) {
    CAPTURE(to_string(s));
    auto c = default_foraging_config();
    c.strategy = s;
    Engine e(c);
    bool clean = true;
    while (!e.finished() && clean) {
      e.step();
      const auto bad = e.check_invariants();
      clean = bad.empty();
      if (!clean) FAIL_CHECK(bad.front());
      if (s != Strategy::Baseline && !e.intra_component_duplicates().empty()) {
        clean = false;
        FAIL_CHECK(e.intra_component_duplicates().front());
      }
    }
    for (const auto& t : e.transitions()) CHECK(is_legal_transition(t.from, t.to));
    CHECK(e.metrics().treasures_collected > 0);
  }
}

TEST_CASE("a dying robot releases what it held") {
  auto c = cfg("starvation.cfg");
  Engine e(c);
  int deaths = 0;
  while (!e.finished()) {
    e.step();
    for (const auto& r : e.state().robots) {
      if (r.alive()) continue;
      CHECK_FALSE(r.assignment);
      for (const auto& t : e.state().treasures) CHECK(t.holder != r.id);
      for (const auto& s : e.state().stations) {
        CHECK(s.occupant != r.id);
        CHECK(s.reserved_by != r.id);
      }
    }
    deaths = static_cast<int>(std::count_if(e.state().robots.begin(), e.state().robots.end(),
                                            [](const RobotRecord& r) { return !r.alive(); }));
  }
  CHECK(deaths > 0);
  CHECK(e.trace().find(",death") != std::string::npos);
}

TEST_CASE("energy stays in range and the trace ledger matches") {
  auto c = default_foraging_config();
  c.max_iterations = 400;
  const auto r = run(c);
  const auto parsed = trace::parse(r.trace);
  CHECK(parsed.header.at("seed") == "1");
  std::vector<double> energy(c.n_robots, c.energy.e_max);
  for (const auto& row : parsed.rows) {
    if (!row.is_robot_row()) continue;
    const auto l = row.ledger();
    energy[row.robot] += l.at("gain") - l.at("drain");
  }
  for (const auto& robot : r.final_state.robots) {
    CHECK(robot.energy >= 0.0);
    CHECK(robot.energy <= c.energy.e_max);
    CHECK(std::abs(robot.energy - energy[robot.id]) <= 1e-9);
  }
}

TEST_CASE("auction rounds are traced for the proposed strategy only") {
  auto c = default_foraging_config();
  c.max_iterations = 50;
  const auto proposed = run(c).trace;
  CHECK(proposed.find(",bid:round=0:T") != std::string::npos);
  CHECK(proposed.find(",auction_win:T") != std::string::npos);
  c.strategy = Strategy::Baseline;
  CHECK(run(c).trace.find(",bid:") == std::string::npos);
}
