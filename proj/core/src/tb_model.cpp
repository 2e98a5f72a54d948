#include "fractb/tb_model.hpp"

#include <cmath>
#include <string>

#include "fractb/errors.hpp"

namespace fractb {

void validate(const ModelParams& p) {
  if (!(p.Lambda > 0.0)) throw InvariantViolation("ModelParams: Lambda > 0 required");
  if (!(p.mu > 0.0)) throw InvariantViolation("ModelParams: mu > 0 required");
  if (p.k < 0.0 || p.k > 1.0) throw InvariantViolation("ModelParams: 0 <= k <= 1 required");
  const double rates[] = {p.beta, p.delta, p.epsilon, p.gamma, p.alpha1, p.alpha2};
  for (double r : rates)
    if (!(r >= 0.0)) throw InvariantViolation("ModelParams: all rates must be >= 0");
}

DerivedRates derived_rates(const ModelParams& p) {
  return {p.mu + p.epsilon, p.mu + p.gamma + p.alpha1, p.mu + p.delta + p.alpha2};
}

StateVec tb_rhs(const StateVec& x, const ModelParams& p, double u) {
  const double infection = p.beta * x.I * x.S;
  return {
      p.Lambda - infection - p.mu * x.S,
      infection + (1.0 - p.k) * p.delta * x.T - (p.mu + p.epsilon) * x.L,
      p.epsilon * x.L + p.k * p.delta * x.T - (p.mu + u + p.alpha1) * x.I,
      u * x.I - (p.mu + p.delta + p.alpha2) * x.T,
  };
}

double r0(const ModelParams& p) {
  const auto [b1, b2, b3] = derived_rates(p);
  const double denom =
      p.mu * b1 * b2 * b3 -
      p.mu * p.delta * p.gamma * ((1.0 - p.k) * p.epsilon + p.k * b1);
  if (!(denom > 0.0))
    throw DegenerateDenominator("r0: denominator " + std::to_string(denom) +
                                " is not positive");
  return p.beta * p.epsilon * b3 * p.Lambda / denom;
}

StateVec endemic_equilibrium(const ModelParams& p) {
  if (!(r0(p) > 1.0))
    throw NoEndemicEquilibrium("endemic_equilibrium: r0 <= 1, only the "
                               "disease-free state exists");
  const auto [b1, b2, b3] = derived_rates(p);

  // Scalar balance for q = beta * S*: substitute T* = gamma I* / b3 and
  // L* = (b2 I* - k delta T*) / epsilon into the L equation.
  const double q = b1 * (b2 - p.k * p.delta * p.gamma / b3) / p.epsilon -
                   (1.0 - p.k) * p.delta * p.gamma / b3;
  const double S = q / p.beta;
  const double I = (p.Lambda - p.mu * S) / (p.beta * S);
  const double T = p.gamma * I / b3;
  const double L = (b2 * I - p.k * p.delta * T) / p.epsilon;
  return {S, L, I, T};
}

VectorField make_field(const ModelParams& p, std::span<const double> control,
                       const TimeGrid& grid) {
  if (control.size() != grid.nodes())
    throw GridMismatch("make_field: control path size does not match the grid");
  const double h = grid.h();
  return {4, [p, control, h](double t, std::span<const double> x, std::span<double> dx) {
            const auto j = static_cast<std::size_t>(std::llround(t / h));
            const StateVec s{x[0], x[1], x[2], x[3]};
            const StateVec d = tb_rhs(s, p, control[j]);
            dx[0] = d.S;
            dx[1] = d.L;
            dx[2] = d.I;
            dx[3] = d.T;
          }};
}

namespace {

GridFunction run(const ModelParams& p, const StateVec& x0, double alpha,
                 const TimeGrid& grid, std::span<const double> control) {
  validate(p);
  if (x0.S < 0.0 || x0.L < 0.0 || x0.I < 0.0 || x0.T < 0.0)
    throw InvariantViolation("simulate: initial state must be nonnegative");
  const double init[4] = {x0.S, x0.L, x0.I, x0.T};
  return solve_caputo_ivp(make_field(p, control, grid), init, alpha, grid);
}

}  // namespace

GridFunction simulate(const ModelParams& p, const StateVec& x0, double alpha,
                      const TimeGrid& grid) {
  const std::vector<double> constant(grid.nodes(), p.gamma);
  return run(p, x0, alpha, grid, constant);
}

GridFunction simulate(const ModelParams& p, const StateVec& x0, double alpha,
                      const TimeGrid& grid, std::span<const double> control) {
  return run(p, x0, alpha, grid, control);
}

}  // namespace fractb
