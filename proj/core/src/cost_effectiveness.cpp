#include "fractb/cost_effectiveness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "fractb/errors.hpp"

namespace fractb {

EfficacySeries efficacy(const GridFunction& states) {
  const double i0 = states.at(0)[kI];
  if (!(i0 > 0.0))
    throw ZeroInitialInfectious("efficacy: I(0) must be positive");
  EfficacySeries out{states.grid, std::vector<double>(states.grid.nodes())};
  for (std::size_t j = 0; j < out.values.size(); ++j)
    out.values[j] = 1.0 - states.at(j)[kI] / i0;
  return out;
}

double averted_cases(const GridFunction& states) {
  const std::vector<double> infectious = states.component(kI);
  return states.grid.tf * infectious.front() -
         trapezoid(infectious, states.grid.h());
}

double total_cost(const GridFunction& states, const ControlPath& control, double C) {
  if (states.grid != control.grid)
    throw GridMismatch("total_cost: states and control use different grids");
  std::vector<double> integrand(states.grid.nodes());
  for (std::size_t j = 0; j < integrand.size(); ++j)
    integrand[j] = C * control.values[j] * states.at(j)[kI];
  return trapezoid(integrand, states.grid.h());
}

CostEffReport summarize(const GridFunction& states, const ControlPath& control,
                        const FocpConfig& cfg) {
  CostEffReport r;
  r.A = averted_cases(states);
  r.TC = total_cost(states, control, cfg.C);
  if (r.A != 0.0) r.acer = r.TC / r.A;
  r.Fbar = r.A / (states.grid.tf * states.at(0)[kI]);
  r.J = cost_functional(states, control, cfg.B, cfg.rho);
  r.alpha = cfg.alpha;
  r.B = cfg.B;
  return r;
}

std::vector<double> default_weight_grid() {
  std::vector<double> out(20);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = 0.05 * static_cast<double>(i + 1);
  return out;
}

std::vector<SweepRow> weight_sweep(const ModelParams& params, const StateVec& x0,
                                   std::span<const double> alphas,
                                   std::span<const double> B_values,
                                   const FocpConfig& base) {
  std::vector<double> a_sorted(alphas.begin(), alphas.end());
  std::vector<double> b_sorted(B_values.begin(), B_values.end());
  std::sort(a_sorted.begin(), a_sorted.end());
  std::sort(b_sorted.begin(), b_sorted.end());
  for (double b : b_sorted)
    if (!(b > 0.0)) throw InvariantViolation("weight_sweep: every B must be > 0");

  struct Task {
    double alpha;
    double B;
  };
  std::vector<Task> tasks;
  tasks.reserve(a_sorted.size() * b_sorted.size());
  for (double a : a_sorted)
    for (double b : b_sorted) tasks.push_back({a, b});

  std::vector<SweepRow> rows(tasks.size());
  std::vector<std::exception_ptr> failures(tasks.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      FocpConfig cfg = base;
      cfg.alpha = tasks[i].alpha;
      cfg.B = tasks[i].B;
      try {
        try {
          const FocpSolution sol = solve_focp(params, x0, cfg);
          rows[i] = {summarize(sol.states, sol.control, cfg), sol.iterations, true};
        } catch (const NotConverged& e) {
          rows[i] = {summarize(e.last.states, e.last.control, cfg),
                     e.last.iterations, false};
        }
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const std::size_t n_workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                            tasks.size());
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return rows;
}

}  // namespace fractb
