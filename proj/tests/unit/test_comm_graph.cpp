#include <doctest.h>

#include "eaforage/comm_graph.hpp"

using namespace eaforage;

namespace {

CommGraph line(int n, double spacing, double radius) {
  std::map<RobotId, Vec2> pos;
  std::set<RobotId> alive;
  for (int i = 0; i < n; ++i) {
    pos[i] = {i * spacing, 0.0};
    alive.insert(i);
  }
  return CommGraph::rebuild(pos, radius, alive);
}

}  // namespace

TEST_CASE("closed disk: an edge at exactly the radius") {
  const auto g = CommGraph::rebuild({{0, {0, 0}}, {1, {0.5, 0}}}, 0.5, {0, 1});
  CHECK(g.neighbors(0) == std::set<RobotId>{1});
}

TEST_CASE("single robot") {
  const auto g = CommGraph::rebuild({{0, {1, 1}}}, 1.0, {0});
  CHECK(g.isolated(0));
  REQUIRE(g.components().size() == 1);
  CHECK(g.components()[0] == std::vector<RobotId>{0});
}

TEST_CASE("line at 0.9 radius is a path graph") {
  const double r = 1.0;
  const auto g = line(5, 0.9 * r, r);
  // Brute-force oracle over all pairs.
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      const bool expect = std::abs(i - j) * 0.9 * r <= r;
      CHECK(static_cast<bool>(g.neighbors(i).count(j)) == expect);
    }
  CHECK(g.components().size() == 1);
  CHECK(g.edges().size() == 4);
}

TEST_CASE("dead robots are not nodes") {
  const auto g = CommGraph::rebuild({{0, {0, 0}}, {1, {0.1, 0}}, {2, {0.2, 0}}}, 0.15, {0, 2});
  CHECK_FALSE(g.has_node(1));
  CHECK(g.components().size() == 2);
  CHECK(g.component_of(1) == -1);
}

TEST_CASE("deliver") {
  const auto g = CommGraph::rebuild({{0, {0, 0}}, {1, {0.1, 0}}, {2, {0.2, 0}}, {3, {5, 5}}}, 1.0, {0, 1, 2, 3});
  SUBCASE("empty outbox") {
    const auto in = deliver(g, {});
    for (const auto& [id, msgs] : in) CHECK(msgs.empty());
    CHECK(in.size() == 4);
  }
  SUBCASE("fully connected triangle") {
    const auto in = deliver(g, {{0, 0, 7, 1.5, 0}});
    CHECK(in.at(1).size() == 1);
    CHECK(in.at(2).size() == 1);
    CHECK(in.at(0).empty());
    CHECK(in.at(3).empty());
  }
  SUBCASE("isolated sender reaches nobody") {
    const auto in = deliver(g, {{3, 3, 1, 2.0, 0}});
    for (const auto& [id, msgs] : in) CHECK(msgs.empty());
  }
  SUBCASE("inbox order") {
    const auto in = deliver(g, {{2, 2, 1, 1, 0}, {1, 1, 3, 1, 0}, {1, 1, 0, 1, 0}});
    const auto& box = in.at(0);
    REQUIRE(box.size() == 3);
    CHECK(box[0].sender == 1);
    CHECK(box[0].treasure_id == 0);
    CHECK(box[1].treasure_id == 3);
    CHECK(box[2].sender == 2);
  }
}

TEST_CASE("reconnection target") {
  RobotRecord r;
  r.pose = {1, 0, 0};
  CHECK_THROWS_AS(reconnection_target(r), NeverConnectedError);
  r.last_neighbor_snapshot[2] = {{0, 0}, 10};
  r.last_neighbor_snapshot[3] = {{5, 5}, 10};
  CHECK(reconnection_target(r) == Vec2{0, 0});
  r.last_neighbor_snapshot.erase(2);
  CHECK(reconnection_target(r) == Vec2{5, 5});
  r.last_neighbor_snapshot[4] = {{1, 1}, 3};
  r.last_neighbor_snapshot[1] = {{1, -1}, 3};
  CHECK(reconnection_target(r) == Vec2{1, -1});
}
