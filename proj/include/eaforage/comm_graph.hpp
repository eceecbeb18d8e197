#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eaforage/types.hpp"

namespace eaforage {

/// A bid as relayed through the network. `sender` is the robot that
/// transmitted this copy; `bidder` is the robot the utility belongs to.
struct BidMessage {
  RobotId sender = 0;
  RobotId bidder = 0;
  TreasureId treasure_id = 0;
  double utility = 0.0;
  int round = 0;
};

/// Undirected disk graph over alive robots (closed disk: an edge exists at
/// exactly `radius`).
class CommGraph {
 public:
  CommGraph() = default;

  static CommGraph rebuild(const std::map<RobotId, Vec2>& positions, double radius,
                           const std::set<RobotId>& alive, Tick tick = 0);

  const std::set<RobotId>& neighbors(RobotId id) const;
  bool has_node(RobotId id) const { return adjacency_.count(id) != 0; }
  bool isolated(RobotId id) const { return neighbors(id).empty(); }
  bool connected(RobotId a, RobotId b) const { return component_of(a) == component_of(b); }

  /// Components ordered by smallest member id; members sorted ascending.
  const std::vector<std::vector<RobotId>>& components() const { return components_; }
  /// Index into components(), or -1 for robots not in the graph.
  int component_of(RobotId id) const;

  /// Sorted (i < j) edge list.
  std::vector<std::pair<RobotId, RobotId>> edges() const;

  const std::map<RobotId, std::set<RobotId>>& adjacency() const { return adjacency_; }
  double radius() const { return radius_; }
  Tick tick() const { return tick_; }

 private:
  std::map<RobotId, std::set<RobotId>> adjacency_;
  std::vector<std::vector<RobotId>> components_;
  std::map<RobotId, int> component_index_;
  double radius_ = 0.0;
  Tick tick_ = 0;
};

/// Delivers every message to exactly its sender's neighbors. Inbox order is
/// (sender id, treasure id, bidder id). Every alive node gets an entry.
std::map<RobotId, std::vector<BidMessage>> deliver(const CommGraph& graph,
                                                   const std::vector<BidMessage>& outbox);

class NeverConnectedError : public std::runtime_error {
 public:
  NeverConnectedError() : std::runtime_error("never connected") {}
};

/// Snapshot position of the robot that was closest when `robot` last had a
/// neighbor; ties go to the lower robot id. Throws NeverConnectedError on an
/// empty snapshot.
Vec2 reconnection_target(const RobotRecord& robot);

/// Debug trace row: "tick;i-j i-k ...;components".
std::string graph_trace_row(const CommGraph& graph);

}  // namespace eaforage
