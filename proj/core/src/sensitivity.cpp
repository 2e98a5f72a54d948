#include "fractb/sensitivity.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

#include "fractb/errors.hpp"

namespace fractb {

namespace {

struct NamedMember {
  std::string_view name;
  double ModelParams::* member;
};

// Reporting order is fixed; keep in sync with sensitivity_param_names().
constexpr std::array<NamedMember, 9> kMembers = {{
    {"mu", &ModelParams::mu},
    {"epsilon", &ModelParams::epsilon},
    {"gamma", &ModelParams::gamma},
    {"alpha1", &ModelParams::alpha1},
    {"delta", &ModelParams::delta},
    {"alpha2", &ModelParams::alpha2},
    {"Lambda", &ModelParams::Lambda},
    {"k", &ModelParams::k},
    {"beta", &ModelParams::beta},
}};

double ModelParams::* find_member(std::string_view name) {
  for (const auto& m : kMembers)
    if (m.name == name) return m.member;
  throw UnknownKey("sensitivity: unknown parameter '" + std::string(name) + "'");
}

double central_difference(const ModelParams& params, double ModelParams::* member,
                          double step) {
  ModelParams hi = params;
  ModelParams lo = params;
  hi.*member += step;
  lo.*member -= step;
  return (r0(hi) - r0(lo)) / (2.0 * step);
}

}  // namespace

std::span<const std::string_view> sensitivity_param_names() {
  static const std::array<std::string_view, 9> names = [] {
    std::array<std::string_view, 9> out{};
    for (std::size_t i = 0; i < kMembers.size(); ++i) out[i] = kMembers[i].name;
    return out;
  }();
  return names;
}

SensitivityIndex sensitivity_index(const ModelParams& params, std::string_view name) {
  const auto member = find_member(name);
  const double value = params.*member;
  const double step = std::max(1e-6 * std::abs(value), 1e-12);

  // One Richardson level on the O(step^2) central difference.
  const double coarse = central_difference(params, member, step);
  const double fine = central_difference(params, member, 0.5 * step);
  const double derivative = (4.0 * fine - coarse) / 3.0;

  return {std::string(name), derivative * value / r0(params)};
}

std::vector<SensitivityIndex> sensitivity_table(const ModelParams& params) {
  std::vector<SensitivityIndex> out;
  out.reserve(kMembers.size());
  for (const auto& m : kMembers) out.push_back(sensitivity_index(params, m.name));
  return out;
}

PerturbationResult perturbation_experiment(const ModelParams& params,
                                           std::string_view name, double pct,
                                           double alpha, const TimeGrid& grid) {
  if (!(pct > -100.0))
    throw InvariantViolation("perturbation_experiment: pct must exceed -100");
  const auto member = find_member(name);

  ModelParams perturbed = params;
  perturbed.*member = (params.*member) * (1.0 + pct / 100.0);
  validate(perturbed);

  const StateVec x0 = endemic_equilibrium(params);
  const std::vector<double> no_treatment(grid.nodes(), 0.0);
  const GridFunction base = simulate(params, x0, alpha, grid, no_treatment);
  const GridFunction pert = simulate(perturbed, x0, alpha, grid, no_treatment);

  PerturbationResult result;
  result.param_name = std::string(name);
  result.pct_change = pct;
  result.baseline_I = GridFunction(grid, 1);
  result.perturbed_I = GridFunction(grid, 1);

  double diff2 = 0.0;
  double base2 = 0.0;
  for (std::size_t j = 0; j < grid.nodes(); ++j) {
    const double ib = base.at(j)[kI];
    const double ip = pert.at(j)[kI];
    result.baseline_I.values[j] = ib;
    result.perturbed_I.values[j] = ip;
    diff2 += (ip - ib) * (ip - ib);
    base2 += ib * ib;
  }
  result.rel_l2_diff = std::sqrt(diff2) / std::sqrt(base2);
  return result;
}

}  // namespace fractb
