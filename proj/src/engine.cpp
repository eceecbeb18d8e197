#include "eaforage/engine.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "eaforage/energy.hpp"

namespace eaforage {

namespace {

std::string treasure_label(TreasureId t) { return "T" + std::to_string(t); }

}  // namespace

Engine::Engine(WorldConfig config) : config_(validate_config(config)) {
  state_.rng = motion::SimRng(config_.rng_seed);
  const auto poses = start_poses(config_);
  for (int i = 0; i < config_.n_robots; ++i) {
    RobotRecord r;
    r.id = i;
    r.pose = poses[static_cast<std::size_t>(i)];
    // Headings are the only per-seed variation in the initial state.
    r.pose.heading = state_.rng.uniform(-std::numbers::pi, std::numbers::pi);
    r.energy = config_.energy.e_max;
    state_.robots.push_back(r);
  }
  for (std::size_t i = 0; i < config_.treasures.size(); ++i) {
    TreasureRecord t;
    t.id = static_cast<TreasureId>(i);
    t.position = config_.treasures[i].position;
    t.value = config_.treasures[i].value;
    t.bin_position = *std::min_element(config_.bins.begin(), config_.bins.end(), [&](Vec2 a, Vec2 b) {
      return distance(a, t.position) < distance(b, t.position);
    });
    state_.treasures.push_back(t);
  }
  for (std::size_t i = 0; i < config_.stations.size(); ++i)
    state_.stations.push_back({static_cast<StationId>(i), config_.stations[i], std::nullopt, std::nullopt});
  state_.averages = planner::FleetAverages::from_config(config_);
  metrics_ = metrics::MetricsRecord::start(config_.n_robots);
  reconnect_goal_.assign(state_.robots.size(), std::nullopt);
  trace_.header(config_hash(config_), config_.rng_seed, to_string(config_.strategy), config_.energy.e_max);
}

bool Engine::fleet_dead() const {
  return std::none_of(state_.robots.begin(), state_.robots.end(), [](const RobotRecord& r) { return r.alive(); });
}

bool Engine::finished() const { return ended_ || state_.tick >= config_.max_iterations || fleet_dead(); }

double Engine::charge_stop_level() const {
  if (config_.strategy == Strategy::Baseline) return config_.baseline_charge_stop;
  return planner::charge_stop_level(state_.averages, config_.energy);
}

// --- bookkeeping -----------------------------------------------------------

void Engine::set_state(RobotRecord& r, RobotState to) {
  if (r.state == to) return;
  if (!is_legal_transition(r.state, to))
    throw std::logic_error("illegal transition " + std::string(to_string(r.state)) + " -> " +
                           std::string(to_string(to)));
  transitions_.push_back({state_.tick, r.id, r.state, to});
  const std::string event =
      "transition:" + std::string(to_string(r.state)) + ">" + std::string(to_string(to));
  r.state = to;
  trace_.event_row(state_.tick, r, event);
}

void Engine::refresh_treasure(TreasureId id) {
  auto& t = state_.treasures.at(static_cast<std::size_t>(id));
  if (t.status == TreasureStatus::Carried) return;
  t.holder.reset();
  t.status = TreasureStatus::Available;
  for (const auto& r : state_.robots) {
    if (r.alive() && r.state == RobotState::GoingToTreasure && r.treasure_claim() == id) {
      t.status = TreasureStatus::Assigned;
      t.holder = r.id;
      break;
    }
  }
}

void Engine::release_claim(RobotRecord& r) {
  const auto claim = r.treasure_claim();
  if (r.assignment && r.assignment->kind == Target::Kind::Station) {
    auto& s = state_.stations.at(static_cast<std::size_t>(r.assignment->id));
    if (s.reserved_by == r.id) s.reserved_by.reset();
    if (s.occupant == r.id) s.occupant.reset();
  }
  r.assignment.reset();
  r.claim_utility = 0.0;
  if (claim) {
    auto& t = state_.treasures.at(static_cast<std::size_t>(*claim));
    if (t.status == TreasureStatus::Carried && t.holder == r.id) {
      // Dropped where it was: back at its fixed spot from the next tick.
      t.status = TreasureStatus::Available;
      t.holder.reset();
      t.available_from = state_.tick + 1;
    }
    refresh_treasure(*claim);
  }
}

void Engine::claim_treasure(RobotRecord& r, TreasureId t, double utility) {
  r.assignment = Target{Target::Kind::Treasure, t};
  r.claim_utility = utility;
  r.task_started = state_.tick;
  r.task_start_energy = r.energy;
  set_state(r, RobotState::GoingToTreasure);
  refresh_treasure(t);
}

void Engine::send_to_station(RobotRecord& r, StationId s) {
  release_claim(r);
  state_.stations.at(static_cast<std::size_t>(s)).reserved_by = r.id;
  r.assignment = Target{Target::Kind::Station, s};
  set_state(r, RobotState::GoingToRecharge);
}

std::optional<StationId> Engine::nearest_free_station(const RobotRecord& r) const {
  std::optional<StationId> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& s : state_.stations) {
    if (!s.is_free()) continue;
    const double d = distance(s.position, r.pose.position());
    if (d < best_d) {
      best = s.id;
      best_d = d;
    }
  }
  return best;
}

// --- tick pipeline -----------------------------------------------------------

void Engine::step() {
  if (finished()) return;
  ++state_.tick;
  const std::size_t n = state_.robots.size();
  moved_.assign(n, 0.0);
  drain_.assign(n, 0.0);
  gain_.assign(n, 0.0);
  dropoff_values_.clear();
  averages_events_.clear();

  rebuild_graph();
  if (config_.strategy == Strategy::Baseline) {
    allocate_baseline();
  } else {
    reconcile_claims();
    apply_recharge_plan();
    allocate_proposed();
    if (uses_connectivity_maintenance(config_.strategy)) maintain_connectivity();
  }
  move();
  apply_energy();
  process_events();
  finish_tick();
}

void Engine::rebuild_graph() {
  std::map<RobotId, Vec2> positions;
  std::set<RobotId> alive;
  for (const auto& r : state_.robots) {
    positions[r.id] = r.pose.position();
    if (r.alive()) alive.insert(r.id);
  }
  state_.graph = CommGraph::rebuild(positions, config_.comm_radius, alive, state_.tick);

  std::set<RobotId> isolated;
  for (auto& r : state_.robots) {
    if (!r.alive()) continue;
    const auto& nbrs = state_.graph.neighbors(r.id);
    if (nbrs.empty()) {
      isolated.insert(r.id);
      continue;
    }
    r.last_neighbor_snapshot.clear();
    for (RobotId j : nbrs)
      r.last_neighbor_snapshot[j] = {state_.robots.at(static_cast<std::size_t>(j)).pose.position(), state_.tick};
  }
  previously_isolated_ = std::move(isolated);
}

void Engine::reconcile_claims() {
  // A carried treasure always beats a claim on it.
  constexpr double kCarrying = std::numeric_limits<double>::infinity();
  for (const auto& component : state_.graph.components()) {
    if (component.size() < 2) continue;
    std::vector<alloc::Bid> claims;
    for (RobotId id : component) {
      const auto& r = state_.robots.at(static_cast<std::size_t>(id));
      if (auto t = r.treasure_claim()) {
        const bool carrying = r.state == RobotState::PickingUp || r.state == RobotState::Delivering;
        claims.push_back({id, *t, carrying ? kCarrying : r.claim_utility});
      }
    }
    std::vector<RobotId> losers;
    for (const auto& claim : claims) {
      const auto& r = state_.robots.at(static_cast<std::size_t>(claim.bidder));
      if (r.state != RobotState::GoingToTreasure) continue;
      std::vector<BidMessage> inbox;
      for (const auto& other : claims)
        if (other.bidder != claim.bidder)
          inbox.push_back({other.bidder, other.bidder, other.treasure, other.utility, 0});
      const auto table = alloc::reconcile_on_reconnect(claim.bidder, claim, {}, inbox);
      if (!table.assignment(claim.bidder)) losers.push_back(claim.bidder);
    }
    for (RobotId id : losers) {
      auto& r = robot(id);
      trace_.event_row(state_.tick, r, "abandon:" + treasure_label(*r.treasure_claim()));
      release_claim(r);
      set_state(r, RobotState::Idle);
    }
  }
}

void Engine::apply_recharge_plan() {
  // Robots turned away at an occupied station take the next free one.
  for (auto& r : state_.robots) {
    if (r.state != RobotState::WaitingForCharger) continue;
    if (auto s = nearest_free_station(r)) send_to_station(r, *s);
  }
  // Energy reports reach the planner over the comm graph, so an isolated
  // robot is invisible to it until it rejoins a component.
  std::vector<RobotRecord> reachable;
  for (const auto& r : state_.robots)
    if (r.alive() && !state_.graph.isolated(r.id)) reachable.push_back(r);
  const auto plan = planner::plan(reachable, state_.stations, state_.averages, config_.energy, state_.tick);
  for (RobotId id : plan.robot_ids) {
    auto& r = robot(id);
    const auto station = nearest_free_station(r);
    if (!station) break;
    trace_.event_row(state_.tick, r, "plan_recharge:S" + std::to_string(*station));
    send_to_station(r, *station);
  }
}

void Engine::log_bids(const alloc::AssignmentTable& table, const std::set<RobotId>& bidders) {
  for (RobotId id : bidders) {
    const auto bid = table.assignment(id);
    std::string event = "bid:round=" + std::to_string(table.round) + ":";
    event += bid ? treasure_label(bid->treasure) + ":u=" + trace::fixed6(bid->utility) : std::string("none");
    trace_.event_row(state_.tick, robot(id), event);
  }
}

void Engine::allocate_proposed() {
  const auto& params = config_.energy;
  const double speed = config_.robot_speed_max;
  const int n_treasures = static_cast<int>(state_.treasures.size());
  std::vector<PendingAuction> still_pending;

  for (const auto& component : state_.graph.components()) {
    std::set<RobotId> idle;
    std::set<TreasureId> claimed;
    for (RobotId id : component) {
      const auto& r = state_.robots.at(static_cast<std::size_t>(id));
      if (r.state == RobotState::Idle) idle.insert(id);
      if (auto t = r.treasure_claim()) claimed.insert(*t);
    }
    if (idle.empty()) continue;

    // Local view: every treasure not claimed inside this component and not
    // waiting to respawn. Claims held elsewhere are invisible.
    std::vector<TreasureRecord> view;
    for (const auto& t : state_.treasures)
      if (!claimed.count(t.id) && t.available_from <= state_.tick) view.push_back(t);

    if (component.size() == 1) {
      auto& r = robot(component.front());
      if (auto b = alloc::assign_disconnected(r, view, params, speed)) {
        trace_.event_row(state_.tick, r, "self_assign:" + treasure_label(b->treasure));
        claim_treasure(r, b->treasure, b->utility);
      }
      continue;
    }

    std::vector<TreasureId> candidates;
    for (const auto& t : view) candidates.push_back(t.id);

    PendingAuction auction;
    auto same = std::find_if(state_.auctions.begin(), state_.auctions.end(), [&](const PendingAuction& p) {
      return p.members == component && p.participants == idle && p.candidates == candidates;
    });
    if (same != state_.auctions.end()) {
      auction = std::move(*same);
    } else {
      std::vector<RobotRecord> bidders;
      for (RobotId id : idle) bidders.push_back(state_.robots.at(static_cast<std::size_t>(id)));
      auction.members = component;
      auction.participants = idle;
      auction.candidates = candidates;
      auction.utilities = alloc::UtilityTable::from_world(bidders, view, params, speed);
      auction.table = alloc::start_auction(component, idle, auction.utilities, candidates);
      log_bids(auction.table, idle);
    }
    for (int i = 0; i < kConsensusRoundsPerTick && !auction.table.converged; ++i) {
      auction.table = alloc::run_rounds(std::move(auction.table), component, state_.graph, auction.utilities,
                                        candidates, 1);
      log_bids(auction.table, idle);
    }
    const int rounds = auction.table.round;

    if (!auction.table.converged) {
      still_pending.push_back(std::move(auction));
      continue;
    }
    ++auction_stats_.converged;
    auction_stats_.max_rounds = std::max(auction_stats_.max_rounds, rounds);
    if (rounds > static_cast<int>(component.size()) * n_treasures) ++auction_stats_.cap_violations;

    for (RobotId id : idle) {
      const auto bid = auction.table.assignment(id);
      if (!bid) continue;
      auto& r = robot(id);
      const auto& t = state_.treasures.at(static_cast<std::size_t>(bid->treasure));
      // Energy may have drained since the auction opened.
      if (!energy::utility(r, t, params, speed).feasible) continue;
      trace_.event_row(state_.tick, r,
                       "auction_win:" + treasure_label(bid->treasure) + ":rounds=" + std::to_string(rounds));
      claim_treasure(r, bid->treasure, bid->utility);
    }
  }
  state_.auctions = std::move(still_pending);
}

void Engine::allocate_baseline() {
  const auto actions =
      alloc::baseline_step(state_.robots, state_.treasures, state_.stations, config_, state_.tick);
  for (const auto& a : actions) {
    auto& r = robot(a.robot);
    switch (a.kind) {
      case alloc::BaselineAction::Kind::GoToStation:
        send_to_station(r, a.target);
        break;
      case alloc::BaselineAction::Kind::Wait:
        release_claim(r);
        r.waiting_since = state_.tick;
        set_state(r, RobotState::WaitingForCharger);
        break;
      case alloc::BaselineAction::Kind::AssignTreasure: {
        const auto& t = state_.treasures.at(static_cast<std::size_t>(a.target));
        claim_treasure(r, a.target, energy::utility(r, t, config_.energy, config_.robot_speed_max).value);
        break;
      }
    }
  }
}

void Engine::maintain_connectivity() {
  const Vec2 center{0.5 * config_.arena_width, 0.5 * config_.arena_height};
  for (auto& r : state_.robots) {
    auto& goal = reconnect_goal_.at(static_cast<std::size_t>(r.id));
    if (r.state != RobotState::Reconnecting) {
      goal.reset();
      continue;
    }
    if (!state_.graph.isolated(r.id)) {
      trace_.event_row(state_.tick, r, "reconnected");
      set_state(r, RobotState::Idle);
      goal.reset();
      continue;
    }
    Vec2 target = center;
    try {
      target = reconnection_target(r);
    } catch (const NeverConnectedError&) {
    }
    if (distance(r.pose.position(), target) <= config_.arrival_radius) {
      trace_.event_row(state_.tick, r, "reconnect_target_reached");
      set_state(r, RobotState::Idle);
      goal.reset();
      continue;
    }
    goal = target;
  }
}

void Engine::move() {
  std::vector<motion::MotionAgent> agents;
  agents.reserve(state_.robots.size());
  for (const auto& r : state_.robots) {
    motion::MotionAgent a{r.id, r.pose, r.alive(), std::nullopt, true};
    switch (r.state) {
      case RobotState::GoingToTreasure:
        a.goal = state_.treasures.at(static_cast<std::size_t>(r.assignment->id)).position;
        break;
      case RobotState::Delivering:
        a.goal = state_.treasures.at(static_cast<std::size_t>(r.assignment->id)).bin_position;
        break;
      case RobotState::GoingToRecharge:
        a.goal = state_.stations.at(static_cast<std::size_t>(r.assignment->id)).position;
        break;
      case RobotState::Reconnecting:
        a.goal = reconnect_goal_.at(static_cast<std::size_t>(r.id));
        break;
      case RobotState::Recharging:
      case RobotState::PickingUp:
      case RobotState::Dead:
        a.can_escape = false;
        break;
      default:
        break;
    }
    agents.push_back(a);
  }

  const auto draws_before = state_.rng.draws();
  const auto result =
      motion::advance(agents, state_.monitor, config_, state_.rng, uses_deadlock_avoidance(config_.strategy));
  for (std::size_t i = 0; i < result.moves.size(); ++i) {
    auto& r = state_.robots[i];
    if (!r.alive()) continue;
    r.pose = result.moves[i].end;
    moved_[i] = result.moves[i].moved;
  }
  std::uint64_t draw = draws_before;
  for (const auto& [a, b] : result.deadlocks) {
    for (auto [self, partner] : {std::pair{a, b}, std::pair{b, a}}) {
      if (!agents.at(static_cast<std::size_t>(self)).can_escape) continue;
      trace_.event_row(state_.tick, robot(self),
                       "escape:partner=" + std::to_string(partner) + ":draw=" + std::to_string(++draw));
    }
  }
}

void Engine::apply_energy() {
  for (std::size_t i = 0; i < state_.robots.size(); ++i) {
    auto& r = state_.robots[i];
    if (!r.alive()) continue;
    const double before = r.energy;
    const bool picked = r.state == RobotState::PickingUp;
    const double after_drain = energy::energy_tick(before, moved_[i], picked, config_.energy);
    drain_[i] = before - after_drain;
    double after = after_drain;
    if (r.state == RobotState::Recharging) {
      after = energy::recharge_tick(after_drain, config_.energy);
      gain_[i] = after - after_drain;
    }
    r.energy = after;
    if (r.energy <= 0.0) {
      r.energy = 0.0;
      trace_.event_row(state_.tick, r, "death");
      release_claim(r);
      set_state(r, RobotState::Dead);
    }
  }
}

void Engine::process_events() {
  const bool maintain = config_.strategy != Strategy::Baseline &&
                        uses_connectivity_maintenance(config_.strategy);
  const double stop = charge_stop_level();
  for (auto& r : state_.robots) {
    const Vec2 here = r.pose.position();
    switch (r.state) {
      case RobotState::GoingToTreasure: {
        auto& t = state_.treasures.at(static_cast<std::size_t>(r.assignment->id));
        if (distance(here, t.position) > config_.arrival_radius) break;
        const bool gone = (t.status == TreasureStatus::Carried && t.holder != r.id) ||
                          t.available_from > state_.tick;
        if (gone) {
          trace_.event_row(state_.tick, r, "treasure_gone:" + treasure_label(t.id));
          release_claim(r);
          set_state(r, RobotState::Idle);
          break;
        }
        t.status = TreasureStatus::Carried;
        t.holder = r.id;
        set_state(r, RobotState::PickingUp);
        break;
      }
      case RobotState::PickingUp:
        // Gamma was charged this tick.
        trace_.event_row(state_.tick, r, "pickup:" + treasure_label(r.assignment->id));
        set_state(r, RobotState::Delivering);
        break;
      case RobotState::Delivering: {
        auto& t = state_.treasures.at(static_cast<std::size_t>(r.assignment->id));
        if (distance(here, t.bin_position) > config_.arrival_radius) break;
        trace_.event_row(state_.tick, r, "dropoff:" + treasure_label(t.id) + ":value=" + trace::exact(t.value));
        dropoff_values_.push_back(t.value);
        averages_events_.push_back(planner::TaskCompleted{r.task_start_energy - r.energy,
                                                          static_cast<double>(state_.tick - r.task_started)});
        t.status = TreasureStatus::Available;
        t.holder.reset();
        t.available_from = state_.tick + 1;
        r.assignment.reset();
        r.claim_utility = 0.0;
        refresh_treasure(t.id);
        if (maintain && state_.graph.isolated(r.id)) set_state(r, RobotState::Reconnecting);
        else set_state(r, RobotState::Idle);
        break;
      }
      case RobotState::GoingToRecharge: {
        auto& s = state_.stations.at(static_cast<std::size_t>(r.assignment->id));
        if (distance(here, s.position) > config_.arrival_radius) break;
        if (s.occupant && s.occupant != r.id) {
          r.waiting_since = state_.tick;
          set_state(r, RobotState::WaitingForCharger);
          break;
        }
        s.occupant = r.id;
        s.reserved_by.reset();
        r.charge_started = state_.tick;
        set_state(r, RobotState::Recharging);
        break;
      }
      case RobotState::Recharging:
        if (r.energy < stop) break;
        averages_events_.push_back(planner::RechargeCompleted{static_cast<double>(state_.tick - r.charge_started)});
        release_claim(r);
        set_state(r, RobotState::Idle);
        break;
      default:
        break;
    }
  }
}

void Engine::finish_tick() {
  for (const auto& e : averages_events_) state_.averages = planner::update_averages(state_.averages, e);

  metrics::TickEvents ev;
  for (std::size_t i = 0; i < state_.robots.size(); ++i) {
    const auto& r = state_.robots[i];
    if (r.alive()) ++ev.alive;
    if (moved_[i] > 0.0) ev.displacements.push_back(moved_[i]);
    if (r.state == RobotState::GoingToRecharge) ++ev.going_to_recharge;
    if (r.state == RobotState::Recharging) ++ev.recharging;
    if (r.state == RobotState::WaitingForCharger) ++ev.waiting;
  }
  ev.dropoff_values = dropoff_values_;
  metrics_ = metrics::accumulate(metrics_, ev);

  for (std::size_t i = 0; i < state_.robots.size(); ++i)
    trace_.robot_row(state_.tick, state_.robots[i], moved_[i], drain_[i], gain_[i]);
  if (fleet_dead()) {
    trace_.end_row(state_.tick, "fleet_dead");
    ended_ = true;
  }
}

// --- checks --------------------------------------------------------------------

std::vector<std::string> Engine::intra_component_duplicates() const {
  std::vector<std::string> out;
  for (const auto& component : state_.graph.components()) {
    std::map<TreasureId, RobotId> holder;
    for (RobotId id : component) {
      const auto& r = state_.robots.at(static_cast<std::size_t>(id));
      auto t = r.treasure_claim();
      if (!t) continue;
      auto [it, inserted] = holder.emplace(*t, id);
      if (!inserted)
        out.push_back(std::to_string(it->second) + "," + std::to_string(id) + ":" + std::to_string(*t));
    }
  }
  return out;
}

std::vector<std::string> Engine::check_invariants() const {
  std::vector<std::string> v;
  std::map<StationId, int> occupants;
  for (const auto& r : state_.robots) {
    if (r.energy < 0.0 || r.energy > config_.energy.e_max) v.push_back("energy out of range");
    if ((r.state == RobotState::Idle || r.state == RobotState::Dead) && r.assignment)
      v.push_back("assignment held while Idle/Dead");
    if (r.pose.x < 0.0 || r.pose.x > config_.arena_width || r.pose.y < 0.0 || r.pose.y > config_.arena_height)
      v.push_back("robot outside arena");
    if (r.state == RobotState::Recharging) {
      if (!r.assignment || r.assignment->kind != Target::Kind::Station) {
        v.push_back("recharging without station");
        continue;
      }
      const auto& s = state_.stations.at(static_cast<std::size_t>(r.assignment->id));
      if (s.occupant != r.id) v.push_back("recharging robot not the station occupant");
      ++occupants[s.id];
    }
  }
  for (const auto& s : state_.stations) {
    if (occupants[s.id] > 1) v.push_back("station with more than one occupant");
    if (s.occupant) {
      const auto& r = state_.robots.at(static_cast<std::size_t>(*s.occupant));
      if (r.state != RobotState::Recharging) v.push_back("occupant not recharging");
    }
  }
  std::map<TreasureId, int> carriers;
  for (const auto& r : state_.robots)
    if ((r.state == RobotState::PickingUp || r.state == RobotState::Delivering) && r.treasure_claim())
      ++carriers[*r.treasure_claim()];
  for (const auto& t : state_.treasures) {
    if (carriers[t.id] > 1) v.push_back("treasure carried by two robots");
    if (t.status == TreasureStatus::Carried && carriers[t.id] != 1) v.push_back("carried status mismatch");
  }
  return v;
}

RunResult run(const WorldConfig& config) {
  Engine engine(config);
  while (!engine.finished()) engine.step();
  return {engine.trace(), engine.metrics(), engine.state(), engine.auction_stats(), engine.transitions()};
}

}  // namespace eaforage
