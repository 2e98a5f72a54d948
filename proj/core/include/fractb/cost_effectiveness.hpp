#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fractb/focp.hpp"
#include "fractb/grid.hpp"
#include "fractb/tb_model.hpp"

namespace fractb {

// F(t) = 1 - I(t)/I(0): proportional reduction of the infectious pool
// relative to its initial size. F(0) = 0; F goes negative once I exceeds I(0).
struct EfficacySeries {
  TimeGrid grid;
  std::vector<double> values;
};

// Summary measures of one controlled run. acer is empty when A = 0 (no cases
// averted makes cost per averted case undefined; non-finite values are kept
// out of output files on purpose).
struct CostEffReport {
  double A = 0.0;     // averted cases, tf I(0) - integral of I
  double TC = 0.0;    // total cost, integral of C u I
  std::optional<double> acer;  // TC / A
  double Fbar = 0.0;  // A / (tf I(0))
  double J = 0.0;     // cost functional of the run
  double alpha = 1.0;
  double B = 0.0;
};

// Throws ZeroInitialInfectious when I(0) <= 0.
EfficacySeries efficacy(const GridFunction& states);

// tf I(0) minus the trapezoidal quadrature of I over [0, tf].
double averted_cases(const GridFunction& states);

// Trapezoidal quadrature of C u(t) I(t). Grids must match.
double total_cost(const GridFunction& states, const ControlPath& control, double C);

// Assembles A, TC, ACER, Fbar and J for one run under cfg's B, rho, C.
CostEffReport summarize(const GridFunction& states, const ControlPath& control,
                        const FocpConfig& cfg);

// One solved control problem inside a weight sweep.
struct SweepRow {
  CostEffReport report;  // report.alpha and report.B identify the pair
  std::size_t iterations = 0;
  bool converged = false;
};

// B grid 0.05, 0.10, ..., 1.00 used when a sweep range is not specified.
std::vector<double> default_weight_grid();

// Solves the control problem for every (alpha, B) pair and summarizes each.
// Rows come back sorted ascending by (alpha, B). Pairs run concurrently;
// a pair whose sweep hits max_iter yields converged = false with the last
// iterate's measures instead of aborting the whole table.
std::vector<SweepRow> weight_sweep(const ModelParams& params, const StateVec& x0,
                                   std::span<const double> alphas,
                                   std::span<const double> B_values,
                                   const FocpConfig& base);

}  // namespace fractb
