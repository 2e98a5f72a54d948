#include "fractb/focp.hpp"

#include <algorithm>
#include <cmath>

#include "fractb/pece.hpp"

namespace fractb {

void validate(const FocpConfig& cfg) {
  if (!(cfg.B > 0.0)) throw InvariantViolation("FocpConfig: B > 0 required");
  if (!(cfg.rho > 0.0)) throw InvariantViolation("FocpConfig: rho > 0 required");
  if (!(cfg.u_max > 0.0)) throw InvariantViolation("FocpConfig: u_max > 0 required");
  if (!(cfg.C >= 0.0)) throw InvariantViolation("FocpConfig: C >= 0 required");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
    throw InvariantViolation("FocpConfig: alpha in (0, 1] required");
  if (!(cfg.theta > 0.0 && cfg.theta <= 1.0))
    throw InvariantViolation("FocpConfig: theta in (0, 1] required");
  if (!(cfg.tol > 0.0)) throw InvariantViolation("FocpConfig: tol > 0 required");
  if (cfg.max_iter == 0) throw InvariantViolation("FocpConfig: max_iter >= 1 required");
}

double cost_functional(const GridFunction& states, const ControlPath& control,
                       double B, double rho) {
  if (states.grid != control.grid)
    throw GridMismatch("cost_functional: states and control use different grids");
  std::vector<double> integrand(states.grid.nodes());
  for (std::size_t j = 0; j < integrand.size(); ++j) {
    const double u = control.values[j];
    integrand[j] = states.at(j)[kI] + B * rho * u * u;
  }
  return trapezoid(integrand, states.grid.h());
}

std::array<double, 4> adjoint_rhs(const StateVec& x, const std::array<double, 4>& p,
                                  double u, const ModelParams& m) {
  const double dp = p[kP1] - p[kP2];
  return {
      m.mu * p[kP1] - m.beta * x.I * dp,
      (m.epsilon + m.mu) * p[kP2] - m.epsilon * p[kP3],
      -1.0 + (m.alpha1 + u + m.mu) * p[kP3] - u * p[kP4] + m.beta * x.S * dp,
      (m.alpha2 + m.mu + m.delta) * p[kP4] + m.delta * (m.k - 1.0) * p[kP2] -
          m.delta * m.k * p[kP3],
  };
}

double optimal_control_law(double I, double p3, double p4, double B, double rho,
                           double u_max) {
  return std::min(std::max(0.0, (p3 - p4) * I / (2.0 * B * rho)), u_max);
}

CostatePath solve_costates(const GridFunction& states, const ControlPath& control,
                           const ModelParams& params, double alpha) {
  if (states.grid != control.grid)
    throw GridMismatch("solve_costates: states and control use different grids");
  const TimeGrid& grid = states.grid;
  const std::size_t last = grid.n_steps;
  const double h = grid.h();

  // In tau = tf - t the system reads D^alpha q = -rhs(x(tf - tau), q, u(tf - tau))
  // with q(0) = 0; sample lookup mirrors the node index.
  VectorField reversed{
      4, [&states, &control, last, h, &params](double tau, std::span<const double> q,
                                               std::span<double> dq) {
        const auto j = last - static_cast<std::size_t>(std::llround(tau / h));
        const auto x = states.at(j);
        const StateVec s{x[kS], x[kL], x[kI], x[kT]};
        const std::array<double, 4> p{q[0], q[1], q[2], q[3]};
        const auto rhs = adjoint_rhs(s, p, control.values[j], params);
        for (std::size_t c = 0; c < 4; ++c) dq[c] = -rhs[c];
      }};

  const double zero[4] = {0.0, 0.0, 0.0, 0.0};
  const GridFunction reversed_costates = solve_caputo_ivp(reversed, zero, alpha, grid);

  CostatePath costates(grid, 4);
  for (std::size_t j = 0; j <= last; ++j) {
    const auto src = reversed_costates.at(last - j);
    std::copy(src.begin(), src.end(), costates.at(j).begin());
  }
  return costates;
}

FocpSolution solve_focp(const ModelParams& params, const StateVec& x0,
                        const FocpConfig& cfg) {
  validate(cfg);
  validate(params);
  const TimeGrid& grid = cfg.grid;
  const std::size_t nodes = grid.nodes();

  ControlPath control(grid, 0.0);
  FocpSolution sol;
  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    sol.states = simulate(params, x0, cfg.alpha, grid, control.values);
    sol.costates = solve_costates(sol.states, control, params, cfg.alpha);

    std::vector<double> refreshed(nodes);
    double change = 0.0;
    double scale = 1.0;
    for (std::size_t j = 0; j < nodes; ++j) {
      const auto p = sol.costates.at(j);
      refreshed[j] = optimal_control_law(sol.states.at(j)[kI], p[kP3], p[kP4],
                                         cfg.B, cfg.rho, cfg.u_max);
      change = std::max(change, std::abs(refreshed[j] - control.values[j]));
      scale = std::max(scale, std::abs(refreshed[j]));
    }

    sol.J = cost_functional(sol.states, control, cfg.B, cfg.rho);
    sol.iteration_costs.push_back(sol.J);
    sol.control = control;
    sol.iterations = it;
    if (change <= cfg.tol * scale) {
      sol.converged = true;
      return sol;
    }
    for (std::size_t j = 0; j < nodes; ++j)
      control.values[j] = cfg.theta * refreshed[j] + (1.0 - cfg.theta) * control.values[j];
  }
  throw NotConverged("solve_focp: no convergence within " +
                         std::to_string(cfg.max_iter) + " iterations",
                     std::move(sol));
}

}  // namespace fractb
