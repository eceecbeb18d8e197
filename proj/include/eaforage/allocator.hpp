#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "eaforage/comm_graph.hpp"
#include "eaforage/config.hpp"
#include "eaforage/types.hpp"

namespace eaforage::alloc {

struct Bid {
  RobotId bidder = 0;
  TreasureId treasure = 0;
  double utility = 0.0;

  friend bool operator==(const Bid&, const Bid&) = default;
};

/// Dominance order used everywhere in the auction: higher utility wins,
/// equal utilities go to the lower robot id.
inline bool outbids(const Bid& a, const Bid& b) {
  if (a.utility != b.utility) return a.utility > b.utility;
  return a.bidder < b.bidder;
}

/// Feasible utilities only: a missing entry means the robot cannot afford
/// the treasure and will never bid on it.
class UtilityTable {
 public:
  void set(RobotId robot, TreasureId treasure, double utility) { entries_[{robot, treasure}] = utility; }
  std::optional<double> get(RobotId robot, TreasureId treasure) const;

  /// Utilities of every robot against every treasure in `candidates`.
  static UtilityTable from_world(const std::vector<RobotRecord>& robots,
                                 const std::vector<TreasureRecord>& candidates,
                                 const EnergyParams& params, double speed);

 private:
  std::map<std::pair<RobotId, TreasureId>, double> entries_;
};

/// Best feasible, non-excluded candidate for `robot`; ties to the lower treasure id.
std::optional<Bid> best_bid(RobotId robot, const UtilityTable& utilities,
                            const std::vector<TreasureId>& candidates,
                            const std::set<TreasureId>& excluded);

/// Same choice computed straight from the records (round 0 of the auction).
std::optional<BidMessage> local_best_bid(const RobotRecord& robot,
                                         const std::vector<TreasureRecord>& treasures,
                                         const std::set<TreasureId>& excluded,
                                         const EnergyParams& params, double speed);

struct AuctionEntry {
  bool participant = false;  // idle bidder; other component members only relay
  std::optional<Bid> bid;
  std::set<TreasureId> excluded;
  std::map<TreasureId, Bid> best_known;  // highest bid heard per treasure
};

struct AssignmentTable {
  std::map<RobotId, AuctionEntry> entries;
  int round = 0;
  bool converged = false;

  std::optional<Bid> assignment(RobotId robot) const;
};

/// Round 0: every participant places its best bid. Relays start empty.
AssignmentTable start_auction(const std::vector<RobotId>& component,
                              const std::set<RobotId>& participants,
                              const UtilityTable& utilities,
                              const std::vector<TreasureId>& candidates);

/// Every member rebroadcasts everything it knows (max-consensus relay).
std::vector<BidMessage> broadcast(const AssignmentTable& table);

/// One synchronous round: merge inboxes, drop claims that have been
/// outbid (excluding that treasure), rebid. Converged when no bid and no
/// best-known entry changed.
AssignmentTable consensus_round(const std::vector<RobotId>& component,
                                const std::map<RobotId, std::vector<BidMessage>>& inboxes,
                                AssignmentTable table, const UtilityTable& utilities,
                                const std::vector<TreasureId>& candidates);

/// Runs broadcast / deliver / consensus_round until converged or
/// `max_rounds` more rounds have elapsed.
AssignmentTable run_rounds(AssignmentTable table, const std::vector<RobotId>& component,
                           const CommGraph& graph, const UtilityTable& utilities,
                           const std::vector<TreasureId>& candidates, int max_rounds);

/// Self-assignment of an isolated robot from its local view; duplicates
/// with other components are possible.
std::optional<Bid> assign_disconnected(const RobotRecord& robot,
                                       const std::vector<TreasureRecord>& local_view,
                                       const EnergyParams& params, double speed);

/// Re-enters `claim` as a fresh bid for `robot` and resolves it against the
/// inbox. The robot's entry ends with no bid (and the treasure excluded) when
/// the claim lost.
AssignmentTable reconcile_on_reconnect(RobotId robot, const Bid& claim, AssignmentTable table,
                                       const std::vector<BidMessage>& inbox);

struct BaselineAction {
  enum class Kind { AssignTreasure, GoToStation, Wait };
  RobotId robot = 0;
  Kind kind = Kind::AssignTreasure;
  int target = 0;  // treasure id or station id; unused for Wait
};

/// Centralised greedy policy. Low robots (below the low threshold) take the
/// nearest free station or wait; the rest are matched to their nearest
/// available treasure, conflicts going to the closer robot, repeated until
/// robots or treasures run out.
std::vector<BaselineAction> baseline_step(const std::vector<RobotRecord>& fleet,
                                          const std::vector<TreasureRecord>& treasures,
                                          const std::vector<StationRecord>& stations,
                                          const WorldConfig& config, Tick now);

}  // namespace eaforage::alloc
