#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "fractb/errors.hpp"
#include "fractb/grid.hpp"
#include "fractb/tb_model.hpp"

namespace fractb {

// Configuration of the treatment-rate optimal control problem
//   min J(u) = integral of I(t) + B rho u(t)^2 over [0, tf]
// subject to the compartment dynamics with u replacing the constant
// treatment rate, and 0 <= u(t) <= u_max.
struct FocpConfig {
  double B = 0.15;       // control cost weight, > 0
  double rho = 452.758;  // infectious-count scale for the quadratic term, > 0
  double u_max = 1.0;    // admissible upper bound on u, > 0
  double C = 1.0;        // per-case detection/treatment cost used downstream
  TimeGrid grid{5.0, 2000};
  double alpha = 1.0;    // fractional order in (0, 1]
  double theta = 0.5;    // relaxation weight of the control update, in (0, 1]
  double tol = 1e-4;     // sweep stopping tolerance, > 0
  std::size_t max_iter = 200;

  friend bool operator==(const FocpConfig&, const FocpConfig&) = default;
};

void validate(const FocpConfig& cfg);

// Per-node control samples on a grid, each within [0, u_max].
struct ControlPath {
  TimeGrid grid;
  std::vector<double> values;

  ControlPath() = default;
  ControlPath(const TimeGrid& g, double constant = 0.0)
      : grid(g), values(g.nodes(), constant) {}
};

// Costates p1..p4 stored as a dimension-4 GridFunction; p_i(tf) = 0.
using CostatePath = GridFunction;
inline constexpr std::size_t kP1 = 0, kP2 = 1, kP3 = 2, kP4 = 3;

struct FocpSolution {
  GridFunction states;   // S, L, I, T per node
  ControlPath control;   // consistent with states/costates (pre-update iterate)
  CostatePath costates;  // p1..p4 per node
  double J = 0.0;
  std::vector<double> iteration_costs;  // J of each sweep iteration, in order
  std::size_t iterations = 0;
  bool converged = false;
};

// Sweep hit max_iter without meeting the tolerance; carries the last iterate.
struct NotConverged : Error {
  FocpSolution last;
  NotConverged(const std::string& what, FocpSolution last_)
      : Error(what), last(std::move(last_)) {}
};

// J = trapezoidal quadrature of I(t) + B rho u(t)^2. Grids must match.
double cost_functional(const GridFunction& states, const ControlPath& control,
                       double B, double rho);

// Right-hand side of the costate system in forward time, written exactly as
// the model's adjoint equations state it:
//   (mu p1 - beta I (p1 - p2),
//    (eps + mu) p2 - eps p3,
//    -1 + (alpha1 + u + mu) p3 - u p4 + beta S (p1 - p2),
//    (alpha2 + mu + delta) p4 + delta (k - 1) p2 - delta k p3)
std::array<double, 4> adjoint_rhs(const StateVec& x, const std::array<double, 4>& p,
                                  double u, const ModelParams& params);

// u = min{max{0, (p3 - p4) I / (2 B rho)}, u_max}.
double optimal_control_law(double I, double p3, double p4, double B, double rho,
                           double u_max);

// Solves the costate system backward from p_i(tf) = 0. The substitution
// tau = tf - t turns the right-sided terminal-value problem into a left-sided
// fractional IVP with zero initial data (for which the Riemann-Liouville and
// Caputo formulations coincide); that IVP runs through the PECE solver against
// the time-reversed state/control samples, and the result is reversed back.
CostatePath solve_costates(const GridFunction& states, const ControlPath& control,
                           const ModelParams& params, double alpha);

// Forward-backward sweep: forward state solve under the current control,
// backward costate solve, pointwise control law, then relaxation
// u <- theta u_new + (1 - theta) u. Stops when
//   max_j |u_new - u| <= tol * max(1, max_j |u_new|)
// and returns the pre-update iterate (states, costates and control agree).
// Throws NotConverged with the last iterate if max_iter is reached.
FocpSolution solve_focp(const ModelParams& params, const StateVec& x0,
                        const FocpConfig& cfg);

}  // namespace fractb
