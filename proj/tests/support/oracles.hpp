#pragma once

// Reference computations for the test suite, written against the underlying
// definitions rather than the library code paths they check.

#include <cstddef>
#include <functional>
#include <vector>

#include "fractb/focp.hpp"
#include "fractb/grid.hpp"
#include "fractb/tb_model.hpp"

namespace oracle {

// Fractional Adams weights evaluated directly from their defining formulas
// in extended precision.
long double predictor_weight(long double alpha, std::size_t n, std::size_t j,
                             long double h);
long double corrector_weight(long double alpha, std::size_t n, std::size_t j,
                             long double h);

// Classical RK4 sweep over a uniform grid; the field is sampled at half
// steps as required by the stages.
using Field =
    std::function<void(double, const std::vector<double>&, std::vector<double>&)>;
fractb::GridFunction rk4(const Field& f, const std::vector<double>& x0,
                         const fractb::TimeGrid& grid);

// E_{1/2}(-x) = exp(x^2) erfc(x), the classical closed form.
double ml_half_negative(double x);

// Costate p3 of the zero-state, zero-control adjoint at alpha = 1:
// p3(t) = (1 - e^{-(alpha1+mu)(tf-t)}) / (alpha1 + mu).
double p3_closed_form(double t, double tf, const fractb::ModelParams& m);

// PECE solve of D^alpha x = -x, x(0) = 1 on [0, 1] compared with
// E_alpha(-t^alpha): error at the endpoint and over the whole grid.
double decay_endpoint_error(double alpha, std::size_t n_steps);
double decay_max_error(double alpha, std::size_t n_steps);

// Entirely classical forward-backward sweep (RK4 both directions, same
// adjoint equations and update rule) for the alpha = 1 cross-validation.
struct ClassicalSweep {
  fractb::GridFunction states;
  std::vector<double> control;
  double J = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};
ClassicalSweep classical_sweep(const fractb::ModelParams& params,
                               const fractb::StateVec& x0,
                               const fractb::FocpConfig& cfg);

// Smallest gamma in [lo, hi] with r0(gamma) = target, by bisection
// (r0 decreases in gamma).
double bisect_gamma(fractb::ModelParams params, double target, double lo, double hi);

}  // namespace oracle
