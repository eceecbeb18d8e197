#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eaforage/allocator.hpp"
#include "eaforage/comm_graph.hpp"
#include "eaforage/config.hpp"
#include "eaforage/metrics.hpp"
#include "eaforage/motion.hpp"
#include "eaforage/recharge_planner.hpp"
#include "eaforage/trace.hpp"
#include "eaforage/types.hpp"

namespace eaforage {

/// An auction that has not converged yet; resumed on the next tick only if
/// the component, its idle robots and its candidate treasures are unchanged.
struct PendingAuction {
  std::vector<RobotId> members;
  std::set<RobotId> participants;
  std::vector<TreasureId> candidates;
  alloc::UtilityTable utilities;
  alloc::AssignmentTable table;
};

struct WorldState {
  Tick tick = 0;
  std::vector<RobotRecord> robots;
  std::vector<TreasureRecord> treasures;
  std::vector<StationRecord> stations;
  CommGraph graph;
  planner::FleetAverages averages;
  std::vector<PendingAuction> auctions;
  motion::DeadlockMonitor monitor;
  motion::SimRng rng{0};
};

struct Transition {
  Tick tick = 0;
  RobotId robot = 0;
  RobotState from = RobotState::Idle;
  RobotState to = RobotState::Idle;
};

struct AuctionStats {
  long converged = 0;
  int max_rounds = 0;       // longest auction, in rounds
  long cap_violations = 0;  // auctions that needed more than |component| * |treasures| rounds
};

inline constexpr int kConsensusRoundsPerTick = 5;

class Engine {
 public:
  /// Validates the config and places the fleet: every robot Idle at e_max
  /// with a heading drawn from the seeded stream, every treasure Available.
  explicit Engine(WorldConfig config);

  /// Advances one tick. No-op once finished().
  void step();
  bool finished() const;
  bool fleet_dead() const;

  const WorldConfig& config() const { return config_; }
  const WorldState& state() const { return state_; }
  const metrics::MetricsRecord& metrics() const { return metrics_; }
  const std::string& trace() const { return trace_.str(); }
  const AuctionStats& auction_stats() const { return auction_stats_; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  /// Robots holding the same treasure inside one component of the current
  /// graph, as "robot,robot:treasure" strings. Empty when conflict-free.
  std::vector<std::string> intra_component_duplicates() const;

  /// Structural invariants of the current state; returns violation messages.
  std::vector<std::string> check_invariants() const;

  /// Energy level at which the current strategy stops charging.
  double charge_stop_level() const;

 private:
  void set_state(RobotRecord& r, RobotState to);
  void release_claim(RobotRecord& r);
  void refresh_treasure(TreasureId id);
  void claim_treasure(RobotRecord& r, TreasureId t, double utility);
  void send_to_station(RobotRecord& r, StationId s);
  std::optional<StationId> nearest_free_station(const RobotRecord& r) const;
  RobotRecord& robot(RobotId id) { return state_.robots.at(static_cast<std::size_t>(id)); }

  void rebuild_graph();
  void reconcile_claims();
  void apply_recharge_plan();
  void allocate_proposed();
  void log_bids(const alloc::AssignmentTable& table, const std::set<RobotId>& bidders);
  void allocate_baseline();
  void maintain_connectivity();
  void move();
  void apply_energy();
  void process_events();
  void finish_tick();

  WorldConfig config_;
  WorldState state_;
  metrics::MetricsRecord metrics_;
  trace::TraceWriter trace_;
  AuctionStats auction_stats_;
  std::vector<Transition> transitions_;

  std::set<RobotId> previously_isolated_;
  std::vector<std::optional<Vec2>> reconnect_goal_;
  std::vector<double> moved_;
  std::vector<double> drain_;
  std::vector<double> gain_;
  std::vector<double> dropoff_values_;
  std::vector<planner::AveragesEvent> averages_events_;
  bool ended_ = false;
};

struct RunResult {
  std::string trace;
  metrics::MetricsRecord metrics;
  WorldState final_state;
  AuctionStats auctions;
  std::vector<Transition> transitions;
};

/// Runs ticks until max_iterations or the whole fleet is dead.
RunResult run(const WorldConfig& config);

}  // namespace eaforage
