#pragma once

#include <optional>
#include <vector>

// Closed-form recomputations written without the library, used as ground truth.
namespace oracle {

struct Coeffs {
  double alpha = 0.1;
  double beta = 2.0;
  double gamma = 0.1;
  double delta = 0.5;
  double e_max = 100.0;
};

double cost(double tx, double ty, double bx, double by, const Coeffs& k);
double travel(double rx, double ry, double tx, double ty, double speed, const Coeffs& k);
double utility(double value, double travel_e, double cost_e);
bool feasible(double energy, double travel_e, double cost_e);
double energy_after_tick(double e, double moved, bool picked, const Coeffs& k);
double energy_after_recharge(double e, const Coeffs& k);

/// u[r][t] is robot r's utility for treasure t; nullopt means infeasible.
/// Repeatedly commits the best remaining (robot, treasure) pair, highest
/// utility first, ties to the lower robot id and then the lower treasure id,
/// and removes both. Returns the treasure per robot (-1 when unassigned).
std::vector<int> sequential_exclusion(const std::vector<std::vector<std::optional<double>>>& u);

}  // namespace oracle
