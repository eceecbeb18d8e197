#include "eaforage/comm_graph.hpp"

#include <algorithm>
#include <sstream>

namespace eaforage {

CommGraph CommGraph::rebuild(const std::map<RobotId, Vec2>& positions, double radius,
                             const std::set<RobotId>& alive, Tick tick) {
  CommGraph g;
  g.radius_ = radius;
  g.tick_ = tick;
  std::vector<std::pair<RobotId, Vec2>> nodes;
  for (const auto& [id, p] : positions) {
    if (!alive.count(id)) continue;
    g.adjacency_[id];
    nodes.emplace_back(id, p);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (distance(nodes[i].second, nodes[j].second) <= radius) {
        g.adjacency_[nodes[i].first].insert(nodes[j].first);
        g.adjacency_[nodes[j].first].insert(nodes[i].first);
      }
    }
  }

  // Breadth-first labelling; map iteration order makes components come out
  // ordered by their smallest id.
  for (const auto& [start, _] : g.adjacency_) {
    if (g.component_index_.count(start)) continue;
    const int index = static_cast<int>(g.components_.size());
    std::vector<RobotId> members{start};
    g.component_index_[start] = index;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (RobotId n : g.adjacency_[members[head]]) {
        if (g.component_index_.emplace(n, index).second) members.push_back(n);
      }
    }
    std::sort(members.begin(), members.end());
    g.components_.push_back(std::move(members));
  }
  return g;
}

const std::set<RobotId>& CommGraph::neighbors(RobotId id) const {
  static const std::set<RobotId> kEmpty;
  auto it = adjacency_.find(id);
  return it == adjacency_.end() ? kEmpty : it->second;
}

int CommGraph::component_of(RobotId id) const {
  auto it = component_index_.find(id);
  return it == component_index_.end() ? -1 : it->second;
}

std::vector<std::pair<RobotId, RobotId>> CommGraph::edges() const {
  std::vector<std::pair<RobotId, RobotId>> out;
  for (const auto& [i, adj] : adjacency_)
    for (RobotId j : adj)
      if (i < j) out.emplace_back(i, j);
  return out;
}

std::map<RobotId, std::vector<BidMessage>> deliver(const CommGraph& graph,
                                                   const std::vector<BidMessage>& outbox) {
  std::map<RobotId, std::vector<BidMessage>> inboxes;
  for (const auto& [id, _] : graph.adjacency()) inboxes[id].reserve(outbox.size());
  for (const auto& msg : outbox)
    for (RobotId n : graph.neighbors(msg.sender)) inboxes[n].push_back(msg);
  auto before = [](const BidMessage& a, const BidMessage& b) {
    if (a.sender != b.sender) return a.sender < b.sender;
    if (a.treasure_id != b.treasure_id) return a.treasure_id < b.treasure_id;
    return a.bidder < b.bidder;
  };
  for (auto& [_, inbox] : inboxes)
    if (!std::is_sorted(inbox.begin(), inbox.end(), before)) std::stable_sort(inbox.begin(), inbox.end(), before);
  return inboxes;
}

Vec2 reconnection_target(const RobotRecord& robot) {
  if (robot.last_neighbor_snapshot.empty()) throw NeverConnectedError();
  const Vec2 here = robot.pose.position();
  const NeighborObservation* best = nullptr;
  double best_d = 0.0;
  // Ascending id order: strict < keeps the lower id on ties.
  for (const auto& [id, obs] : robot.last_neighbor_snapshot) {
    const double d = distance(here, obs.position);
    if (!best || d < best_d) {
      best = &obs;
      best_d = d;
    }
  }
  return best->position;
}

std::string graph_trace_row(const CommGraph& graph) {
  std::ostringstream os;
  os << graph.tick() << ';';
  bool first = true;
  for (const auto& [i, j] : graph.edges()) {
    if (!first) os << ' ';
    os << i << '-' << j;
    first = false;
  }
  os << ';' << graph.components().size();
  return os.str();
}

}  // namespace eaforage
