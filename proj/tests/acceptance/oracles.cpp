#include "oracles.hpp"

#include <cmath>

namespace oracle {

double cost(double tx, double ty, double bx, double by, const Coeffs& k) {
  const double dx = tx - bx;
  const double dy = ty - by;
  return k.alpha + k.beta * std::sqrt(dx * dx + dy * dy) + k.gamma;
}

double travel(double rx, double ry, double tx, double ty, double speed, const Coeffs& k) {
  const double dx = tx - rx;
  const double dy = ty - ry;
  const double d = std::sqrt(dx * dx + dy * dy);
  return k.beta * d + k.alpha * std::ceil(d / speed);
}

double utility(double value, double travel_e, double cost_e) { return value - travel_e - cost_e; }

bool feasible(double energy, double travel_e, double cost_e) { return energy >= travel_e + cost_e; }

double energy_after_tick(double e, double moved, bool picked, const Coeffs& k) {
  double next = e - k.alpha - k.beta * moved;
  if (picked) next -= k.gamma;
  return next < 0.0 ? 0.0 : next;
}

double energy_after_recharge(double e, const Coeffs& k) { return e + k.delta > k.e_max ? k.e_max : e + k.delta; }

std::vector<int> sequential_exclusion(const std::vector<std::vector<std::optional<double>>>& u) {
  const int n = static_cast<int>(u.size());
  const int m = n ? static_cast<int>(u[0].size()) : 0;
  std::vector<int> out(n, -1);
  std::vector<bool> robot_done(n, false), treasure_done(m, false);
  while (true) {
    int br = -1, bt = -1;
    for (int r = 0; r < n; ++r) {
      if (robot_done[r]) continue;
      for (int t = 0; t < m; ++t) {
        if (treasure_done[t] || !u[r][t]) continue;
        // Scanning in (robot, treasure) order keeps the first of equal pairs.
        if (br < 0 || *u[r][t] > *u[br][bt]) {
          br = r;
          bt = t;
        }
      }
    }
    if (br < 0) return out;
    out[br] = bt;
    robot_done[br] = true;
    treasure_done[bt] = true;
  }
}

}  // namespace oracle
