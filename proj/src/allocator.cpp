#include "eaforage/allocator.hpp"

#include <algorithm>
#include <limits>

#include "eaforage/energy.hpp"

namespace eaforage::alloc {

std::optional<double> UtilityTable::get(RobotId robot, TreasureId treasure) const {
  auto it = entries_.find({robot, treasure});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

UtilityTable UtilityTable::from_world(const std::vector<RobotRecord>& robots,
                                      const std::vector<TreasureRecord>& candidates,
                                      const EnergyParams& params, double speed) {
  UtilityTable table;
  for (const auto& r : robots) {
    for (const auto& t : candidates) {
      const auto u = energy::utility(r, t, params, speed);
      if (u.feasible) table.set(r.id, t.id, u.value);
    }
  }
  return table;
}

std::optional<Bid> best_bid(RobotId robot, const UtilityTable& utilities,
                            const std::vector<TreasureId>& candidates,
                            const std::set<TreasureId>& excluded) {
  std::optional<Bid> best;
  for (TreasureId t : candidates) {
    if (excluded.count(t)) continue;
    const auto u = utilities.get(robot, t);
    if (!u) continue;
    if (!best || *u > best->utility || (*u == best->utility && t < best->treasure))
      best = Bid{robot, t, *u};
  }
  return best;
}

std::optional<BidMessage> local_best_bid(const RobotRecord& robot,
                                         const std::vector<TreasureRecord>& treasures,
                                         const std::set<TreasureId>& excluded,
                                         const EnergyParams& params, double speed) {
  std::optional<BidMessage> best;
  for (const auto& t : treasures) {
    if (excluded.count(t.id)) continue;
    const auto u = energy::utility(robot, t, params, speed);
    if (!u.feasible) continue;
    if (!best || u.value > best->utility || (u.value == best->utility && t.id < best->treasure_id))
      best = BidMessage{robot.id, robot.id, t.id, u.value, 0};
  }
  return best;
}

std::optional<Bid> AssignmentTable::assignment(RobotId robot) const {
  auto it = entries.find(robot);
  if (it == entries.end() || !it->second.participant) return std::nullopt;
  return it->second.bid;
}

namespace {

// Picks the best treasure the robot has not yet lost. A treasure whose best
// known bid already beats ours counts as lost straight away.
bool rebid(RobotId id, AuctionEntry& e, const UtilityTable& utilities,
           const std::vector<TreasureId>& candidates) {
  bool changed = false;
  while (true) {
    auto b = best_bid(id, utilities, candidates, e.excluded);
    if (!b) return changed;
    auto known = e.best_known.find(b->treasure);
    if (known != e.best_known.end() && known->second.bidder != id && outbids(known->second, *b)) {
      e.excluded.insert(b->treasure);
      changed = true;
      continue;
    }
    e.bid = b;
    e.best_known[b->treasure] = *b;
    return true;
  }
}

}  // namespace

AssignmentTable start_auction(const std::vector<RobotId>& component,
                              const std::set<RobotId>& participants,
                              const UtilityTable& utilities,
                              const std::vector<TreasureId>& candidates) {
  AssignmentTable table;
  for (RobotId id : component) {
    auto& e = table.entries[id];
    e.participant = participants.count(id) != 0;
    if (e.participant) rebid(id, e, utilities, candidates);
  }
  return table;
}

std::vector<BidMessage> broadcast(const AssignmentTable& table) {
  std::vector<BidMessage> out;
  std::size_t n = 0;
  for (const auto& [id, e] : table.entries) n += e.best_known.size();
  out.reserve(n);
  for (const auto& [id, e] : table.entries)
    for (const auto& [t, b] : e.best_known) out.push_back({id, b.bidder, t, b.utility, table.round});
  return out;
}

AssignmentTable consensus_round(const std::vector<RobotId>& component,
                                const std::map<RobotId, std::vector<BidMessage>>& inboxes,
                                AssignmentTable table, const UtilityTable& utilities,
                                const std::vector<TreasureId>& candidates) {
  bool changed = false;
  for (RobotId id : component) {
    auto& e = table.entries[id];
    if (auto in = inboxes.find(id); in != inboxes.end()) {
      for (const auto& msg : in->second) {
        const Bid heard{msg.bidder, msg.treasure_id, msg.utility};
        auto [it, inserted] = e.best_known.try_emplace(msg.treasure_id, heard);
        if (inserted) {
          changed = true;
        } else if (it->second != heard && outbids(heard, it->second)) {
          it->second = heard;
          changed = true;
        }
      }
    }
    if (!e.participant) continue;
    if (e.bid && e.best_known.at(e.bid->treasure).bidder != id) {
      e.excluded.insert(e.bid->treasure);
      e.bid.reset();
      changed = true;
    }
    if (!e.bid && rebid(id, e, utilities, candidates)) changed = true;
  }
  ++table.round;
  table.converged = !changed;
  return table;
}

AssignmentTable run_rounds(AssignmentTable table, const std::vector<RobotId>& component,
                           const CommGraph& graph, const UtilityTable& utilities,
                           const std::vector<TreasureId>& candidates, int max_rounds) {
  for (int i = 0; i < max_rounds && !table.converged; ++i) {
    const auto inboxes = deliver(graph, broadcast(table));
    table = consensus_round(component, inboxes, std::move(table), utilities, candidates);
  }
  return table;
}

std::optional<Bid> assign_disconnected(const RobotRecord& robot,
                                       const std::vector<TreasureRecord>& local_view,
                                       const EnergyParams& params, double speed) {
  const auto msg = local_best_bid(robot, local_view, {}, params, speed);
  if (!msg) return std::nullopt;
  return Bid{robot.id, msg->treasure_id, msg->utility};
}

AssignmentTable reconcile_on_reconnect(RobotId robot, const Bid& claim, AssignmentTable table,
                                       const std::vector<BidMessage>& inbox) {
  auto& e = table.entries[robot];
  e.participant = true;
  e.bid = claim;
  e.best_known[claim.treasure] = claim;
  for (const auto& msg : inbox) {
    const Bid heard{msg.bidder, msg.treasure_id, msg.utility};
    auto [it, inserted] = e.best_known.try_emplace(msg.treasure_id, heard);
    if (!inserted && outbids(heard, it->second)) it->second = heard;
  }
  if (e.best_known.at(claim.treasure).bidder != robot) {
    e.excluded.insert(claim.treasure);
    e.bid.reset();
  }
  return table;
}

std::vector<BaselineAction> baseline_step(const std::vector<RobotRecord>& fleet,
                                          const std::vector<TreasureRecord>& treasures,
                                          const std::vector<StationRecord>& stations,
                                          const WorldConfig& config, Tick now) {
  std::vector<BaselineAction> actions;

  // Charging queue: robots already waiting (first come first served), then
  // newly low robots, lowest energy first.
  std::vector<const RobotRecord*> waiting;
  std::vector<const RobotRecord*> newly_low;
  std::vector<const RobotRecord*> available;
  for (const auto& r : fleet) {
    if (r.state == RobotState::WaitingForCharger) {
      waiting.push_back(&r);
    } else if (r.state == RobotState::Idle || r.state == RobotState::GoingToTreasure ||
               r.state == RobotState::Reconnecting) {
      if (r.energy < config.baseline_low_threshold) newly_low.push_back(&r);
      else if (r.state == RobotState::Idle) available.push_back(&r);
    }
  }
  std::stable_sort(waiting.begin(), waiting.end(), [](const RobotRecord* a, const RobotRecord* b) {
    if (a->waiting_since != b->waiting_since) return a->waiting_since < b->waiting_since;
    return a->id < b->id;
  });
  std::stable_sort(newly_low.begin(), newly_low.end(), [](const RobotRecord* a, const RobotRecord* b) {
    if (a->energy != b->energy) return a->energy < b->energy;
    return a->id < b->id;
  });

  std::vector<const StationRecord*> free_stations;
  for (const auto& s : stations)
    if (s.is_free()) free_stations.push_back(&s);

  auto take_station = [&](const RobotRecord& r) -> std::optional<StationId> {
    if (free_stations.empty()) return std::nullopt;
    auto best = free_stations.begin();
    for (auto it = free_stations.begin(); it != free_stations.end(); ++it) {
      if (distance((*it)->position, r.pose.position()) < distance((*best)->position, r.pose.position()))
        best = it;
    }
    const StationId id = (*best)->id;
    free_stations.erase(best);
    return id;
  };

  for (const auto* r : waiting)
    if (auto s = take_station(*r)) actions.push_back({r->id, BaselineAction::Kind::GoToStation, *s});
  for (const auto* r : newly_low) {
    if (auto s = take_station(*r)) actions.push_back({r->id, BaselineAction::Kind::GoToStation, *s});
    else actions.push_back({r->id, BaselineAction::Kind::Wait, 0});
  }

  std::vector<const TreasureRecord*> tasks;
  for (const auto& t : treasures)
    if (t.is_available(now)) tasks.push_back(&t);

  // Greedy nearest-task matching.
  while (!available.empty() && !tasks.empty()) {
    std::map<TreasureId, std::pair<const RobotRecord*, double>> winners;
    for (const auto* r : available) {
      const TreasureRecord* nearest = nullptr;
      double nearest_d = std::numeric_limits<double>::infinity();
      for (const auto* t : tasks) {
        const double d = distance(r->pose.position(), t->position);
        if (d < nearest_d) {
          nearest = t;
          nearest_d = d;
        }
      }
      auto [it, inserted] = winners.try_emplace(nearest->id, r, nearest_d);
      if (!inserted && (nearest_d < it->second.second ||
                        (nearest_d == it->second.second && r->id < it->second.first->id)))
        it->second = {r, nearest_d};
    }
    for (const auto& [tid, win] : winners) {
      actions.push_back({win.first->id, BaselineAction::Kind::AssignTreasure, tid});
      std::erase(available, win.first);
      std::erase_if(tasks, [tid = tid](const TreasureRecord* t) { return t->id == tid; });
    }
  }
  return actions;
}

}  // namespace eaforage::alloc
