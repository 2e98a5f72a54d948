#include "fractb/pece.hpp"

#include <cmath>
#include <string>

#include "fractb/errors.hpp"

namespace fractb {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw InvariantViolation("fractional order alpha must lie in (0, 1]");
}

// The solver's convolution tables and the per-step weight arrays below are
// evaluated through these two helpers so they stay arithmetically identical.
double predictor_term(double alpha, double h, double m) {
  return std::pow(h, alpha) / alpha *
         (std::pow(m + 1.0, alpha) - std::pow(m, alpha));
}

double corrector_term(double alpha, double h, double m) {
  const double a1 = alpha + 1.0;
  return std::pow(h, alpha) / (alpha * a1) *
         (std::pow(m + 2.0, a1) + std::pow(m, a1) - 2.0 * std::pow(m + 1.0, a1));
}

double corrector_head(double alpha, double h, double n) {
  const double a1 = alpha + 1.0;
  return std::pow(h, alpha) / (alpha * a1) *
         (std::pow(n, a1) - (n - alpha) * std::pow(n + 1.0, alpha));
}

double corrector_tail(double alpha, double h) {
  return std::pow(h, alpha) / (alpha * (alpha + 1.0));
}

}  // namespace

std::vector<double> abm_predictor_weights(double alpha, std::size_t n, double h) {
  check_alpha(alpha);
  std::vector<double> b(n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    b[j] = predictor_term(alpha, h, static_cast<double>(n - j));
  return b;
}

std::vector<double> abm_corrector_weights(double alpha, std::size_t n, double h) {
  check_alpha(alpha);
  std::vector<double> a(n + 2);
  a[0] = corrector_head(alpha, h, static_cast<double>(n));
  for (std::size_t j = 1; j <= n; ++j)
    a[j] = corrector_term(alpha, h, static_cast<double>(n - j));
  a[n + 1] = corrector_tail(alpha, h);
  return a;
}

GridFunction solve_caputo_ivp(const VectorField& f, std::span<const double> x0,
                              double alpha, const TimeGrid& grid) {
  check_alpha(alpha);
  if (f.dimension != x0.size())
    throw InvariantViolation("solve_caputo_ivp: x0 dimension does not match the field");

  const std::size_t dim = f.dimension;
  const std::size_t N = grid.n_steps;
  const double h = grid.h();
  const double inv_gamma = 1.0 / std::tgamma(alpha);
  const double a_tail = corrector_tail(alpha, h);

  // Stationary convolution tables; index m is the node distance n - j.
  std::vector<double> pb(N), ck(N > 1 ? N - 1 : 0);
  for (std::size_t m = 0; m < N; ++m)
    pb[m] = predictor_term(alpha, h, static_cast<double>(m));
  for (std::size_t m = 0; m + 1 < N; ++m)
    ck[m] = corrector_term(alpha, h, static_cast<double>(m));

  GridFunction x(grid, dim);
  std::vector<double> history((N + 1) * dim);  // f at corrected nodes
  std::vector<double> xp(dim), fp(dim), acc(dim);

  for (std::size_t c = 0; c < dim; ++c) x.values[c] = x0[c];
  f.eval(0.0, x.at(0), {history.data(), dim});

  for (std::size_t n = 0; n < N; ++n) {
    const double t_next = grid.node(n + 1);

    // Predictor: x^P = x0 + (1/Gamma(a)) * sum_j b[n-j] f_j.
    for (std::size_t c = 0; c < dim; ++c) acc[c] = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      const double w = pb[n - j];
      const double* fj = history.data() + j * dim;
      for (std::size_t c = 0; c < dim; ++c) acc[c] += w * fj[c];
    }
    for (std::size_t c = 0; c < dim; ++c) xp[c] = x0[c] + inv_gamma * acc[c];

    f.eval(t_next, xp, fp);

    // Corrector: one pass, then re-evaluate f at the corrected value.
    const double a_head = corrector_head(alpha, h, static_cast<double>(n));
    const double* f0 = history.data();
    for (std::size_t c = 0; c < dim; ++c) acc[c] = a_head * f0[c];
    for (std::size_t j = 1; j <= n; ++j) {
      const double w = ck[n - j];
      const double* fj = history.data() + j * dim;
      for (std::size_t c = 0; c < dim; ++c) acc[c] += w * fj[c];
    }
    auto xn = x.at(n + 1);
    for (std::size_t c = 0; c < dim; ++c)
      xn[c] = x0[c] + inv_gamma * (acc[c] + a_tail * fp[c]);

    for (std::size_t c = 0; c < dim; ++c) {
      if (!std::isfinite(xn[c]))
        throw NonFiniteState("solve_caputo_ivp: non-finite state at t = " +
                             std::to_string(t_next));
    }

    f.eval(t_next, xn, {history.data() + (n + 1) * dim, dim});
  }

  return x;
}

}  // namespace fractb
