#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fractb/grid.hpp"

namespace fractb {

// Right-hand side f(t, x) of D^alpha x = f(t, x). eval must be deterministic;
// it writes f(t, x) into dxdt (both spans have length `dimension`).
struct VectorField {
  std::size_t dimension = 0;
  std::function<void(double t, std::span<const double> x, std::span<double> dxdt)> eval;
};

// Fractional Adams-Bashforth predictor weights for the step to node n+1:
//   b[j] = (h^a / a) * ((n+1-j)^a - (n-j)^a),  j = 0..n.
// All weights are strictly positive for a in (0, 1].
std::vector<double> abm_predictor_weights(double alpha, std::size_t n, double h);

// Fractional Adams-Moulton corrector weights for the step to node n+1:
//   a[0]   = (h^a / (a(a+1))) * (n^{a+1} - (n-a)(n+1)^a)
//   a[j]   = (h^a / (a(a+1))) * ((n-j+2)^{a+1} + (n-j)^{a+1} - 2(n-j+1)^{a+1}), 1 <= j <= n
//   a[n+1] = h^a / (a(a+1))
std::vector<double> abm_corrector_weights(double alpha, std::size_t n, double h);

// Predict-evaluate-correct-evaluate Adams-Bashforth-Moulton solve of the
// Caputo initial value problem D^alpha x = f(t, x), x(0) = x0, alpha in (0,1],
// on the uniform grid. One corrector pass per step; full memory (O(N^2) work);
// the stored history holds f at corrected values. Throws NonFiniteState if any
// component becomes NaN/inf after a corrector step.
GridFunction solve_caputo_ivp(const VectorField& f, std::span<const double> x0,
                              double alpha, const TimeGrid& grid);

}  // namespace fractb
