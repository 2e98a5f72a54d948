#pragma once

#include <span>
#include <string_view>

#include "fractb/grid.hpp"
#include "fractb/pece.hpp"

namespace fractb {

// Epidemiological rates of the four-compartment TB model. gamma is the
// baseline treatment-entry rate; the optimal-control problem replaces it by a
// time-varying control.
struct ModelParams {
  double Lambda = 792.8571;   // recruitment (individuals/year)
  double beta = 0.0005;       // transmission coefficient (1/(individual*year))
  double mu = 1.0 / 70.0;     // natural death rate (1/year)
  double k = 0.15;            // treatment failure fraction, 0 <= k <= 1
  double delta = 1.5;         // treatment-exit rate (1/year)
  double epsilon = 0.00368;   // latent-to-infectious rate (1/year)
  double gamma = 0.7;         // treatment-entry rate (1/year)
  double alpha1 = 0.3;        // TB death rate in I (1/year)
  double alpha2 = 0.05;       // TB death rate in T (1/year)

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Throws InvariantViolation naming the violated constraint.
void validate(const ModelParams& p);

struct StateVec {
  double S = 0.0, L = 0.0, I = 0.0, T = 0.0;

  friend bool operator==(const StateVec&, const StateVec&) = default;
};

struct DerivedRates {
  double b1, b2, b3;  // b1 = mu+eps, b2 = mu+gamma+alpha1, b3 = mu+delta+alpha2
};
DerivedRates derived_rates(const ModelParams& p);

// Right-hand side of the controlled system; u is the treatment rate applied
// to I (u = gamma recovers the uncontrolled model).
StateVec tb_rhs(const StateVec& x, const ModelParams& p, double u);

// Basic reproduction number. Throws DegenerateDenominator when the closed-form
// denominator is not positive.
double r0(const ModelParams& p);

// Positive steady state by closed-form back-substitution.
// Throws NoEndemicEquilibrium when r0 <= 1.
StateVec endemic_equilibrium(const ModelParams& p);

// Adapts the model to the generic fractional solver. The control path must
// supply one value per grid node; eval looks the node index up from t, so the
// field is only valid at grid nodes (which is where the solver samples it).
VectorField make_field(const ModelParams& p, std::span<const double> control,
                       const TimeGrid& grid);

// Forward solve with constant control u = p.gamma (the uncontrolled model).
GridFunction simulate(const ModelParams& p, const StateVec& x0, double alpha,
                      const TimeGrid& grid);

// Forward solve with a per-node control path (size = grid.nodes()).
GridFunction simulate(const ModelParams& p, const StateVec& x0, double alpha,
                      const TimeGrid& grid, std::span<const double> control);

// Column indices of compartments inside trajectory GridFunctions.
inline constexpr std::size_t kS = 0, kL = 1, kI = 2, kT = 3;

}  // namespace fractb
