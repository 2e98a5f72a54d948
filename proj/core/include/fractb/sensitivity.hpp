#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fractb/grid.hpp"
#include "fractb/tb_model.hpp"

namespace fractb {

// Normalized forward sensitivity index of the reproduction number:
// (dR0/dp) * (p / R0). Sign gives the direction of influence.
struct SensitivityIndex {
  std::string param_name;
  double index = 0.0;
};

// Outcome of perturbing one parameter by pct percent and comparing infectious
// trajectories started from the endemic equilibrium of the unperturbed system.
struct PerturbationResult {
  std::string param_name;
  double pct_change = 0.0;
  GridFunction baseline_I;   // dimension 1
  GridFunction perturbed_I;  // dimension 1
  double rel_l2_diff = 0.0;
};

// Names accepted by sensitivity_index / perturbation_experiment, in reporting
// order: mu, epsilon, gamma, alpha1, delta, alpha2, Lambda, k, beta.
std::span<const std::string_view> sensitivity_param_names();

// Index for one parameter. The derivative is a central difference with
// relative step 1e-6 (absolute floor 1e-12) plus one Richardson level.
// Throws UnknownKey for names outside sensitivity_param_names().
SensitivityIndex sensitivity_index(const ModelParams& params, std::string_view name);

// All nine indices in reporting order.
std::vector<SensitivityIndex> sensitivity_table(const ModelParams& params);

// Simulates I(t) from the endemic equilibrium of `params` twice, once with
// the baseline parameters and once with `name` scaled by (1 + pct/100).
// Treatment is withdrawn in both runs (control = 0) so the transient exposes
// how strongly the parameter shapes the infectious pool; the equilibrium
// itself would mask small effects. rel_l2_diff is ||I_p - I_b|| / ||I_b||
// over the grid nodes. Requires pct > -100.
PerturbationResult perturbation_experiment(const ModelParams& params,
                                           std::string_view name, double pct,
                                           double alpha, const TimeGrid& grid);

}  // namespace fractb
