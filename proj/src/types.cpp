#include "eaforage/types.hpp"

#include <array>
#include <utility>

namespace eaforage {

namespace {

constexpr std::array<std::pair<RobotState, std::string_view>, 9> kStateNames{{
    {RobotState::Idle, "Idle"},
    {RobotState::GoingToTreasure, "GoingToTreasure"},
    {RobotState::PickingUp, "PickingUp"},
    {RobotState::Delivering, "Delivering"},
    {RobotState::GoingToRecharge, "GoingToRecharge"},
    {RobotState::Recharging, "Recharging"},
    {RobotState::WaitingForCharger, "WaitingForCharger"},
    {RobotState::Reconnecting, "Reconnecting"},
    {RobotState::Dead, "Dead"},
}};

constexpr std::array<std::pair<Strategy, std::string_view>, 4> kStrategyNames{{
    {Strategy::Proposed, "proposed"},
    {Strategy::ProposedNoDeadlock, "proposed_no_deadlock"},
    {Strategy::ProposedNoConnectivity, "proposed_no_connectivity"},
    {Strategy::Baseline, "baseline"},
}};

}  // namespace

std::string_view to_string(RobotState s) {
  for (const auto& [state, name] : kStateNames)
    if (state == s) return name;
  return "?";
}

std::optional<RobotState> robot_state_from_string(std::string_view s) {
  for (const auto& [state, name] : kStateNames)
    if (name == s) return state;
  return std::nullopt;
}

std::string_view to_string(Strategy s) {
  for (const auto& [strategy, name] : kStrategyNames)
    if (strategy == s) return name;
  return "?";
}

std::optional<Strategy> strategy_from_string(std::string_view s) {
  for (const auto& [strategy, name] : kStrategyNames)
    if (name == s) return strategy;
  return std::nullopt;
}

bool is_legal_transition(RobotState from, RobotState to) {
  using S = RobotState;
  if (from == to || from == S::Dead) return false;
  if (to == S::Dead) return true;
  switch (from) {
    case S::Idle:
      return to == S::GoingToTreasure || to == S::GoingToRecharge ||
             to == S::WaitingForCharger || to == S::Reconnecting;
    case S::GoingToTreasure:
      // Idle: lost a reconciliation or found the treasure gone.
      return to == S::PickingUp || to == S::Idle || to == S::GoingToRecharge ||
             to == S::WaitingForCharger;
    case S::PickingUp:
      return to == S::Delivering;
    case S::Delivering:
      return to == S::Idle || to == S::Reconnecting;
    case S::GoingToRecharge:
      return to == S::Recharging || to == S::WaitingForCharger;
    case S::Recharging:
      return to == S::Idle;
    case S::WaitingForCharger:
      return to == S::GoingToRecharge;
    case S::Reconnecting:
      return to == S::Idle || to == S::GoingToRecharge || to == S::WaitingForCharger;
    case S::Dead:
      return false;
  }
  return false;
}

bool is_mobile_state(RobotState s) {
  switch (s) {
    case RobotState::GoingToTreasure:
    case RobotState::Delivering:
    case RobotState::GoingToRecharge:
    case RobotState::Reconnecting:
      return true;
    default:
      return false;
  }
}

}  // namespace eaforage
