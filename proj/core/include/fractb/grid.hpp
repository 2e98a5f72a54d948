#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fractb/errors.hpp"

namespace fractb {

// Uniform time grid on [0, tf] with nodes t_j = j * h, j = 0..n_steps.
struct TimeGrid {
  double tf = 0.0;
  std::size_t n_steps = 0;

  TimeGrid() = default;
  TimeGrid(double tf_, std::size_t n_steps_) : tf(tf_), n_steps(n_steps_) {
    if (!(tf > 0.0)) throw InvariantViolation("TimeGrid: tf > 0 required");
    if (n_steps < 2) throw InvariantViolation("TimeGrid: n_steps >= 2 required");
  }

  double h() const { return tf / static_cast<double>(n_steps); }
  std::size_t nodes() const { return n_steps + 1; }
  double node(std::size_t j) const { return static_cast<double>(j) * h(); }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

// Vector-valued function of t_j on a TimeGrid, stored flat (node-major).
struct GridFunction {
  TimeGrid grid;
  std::size_t dimension = 0;
  std::vector<double> values;  // size = grid.nodes() * dimension

  GridFunction() = default;
  GridFunction(const TimeGrid& g, std::size_t dim)
      : grid(g), dimension(dim), values(g.nodes() * dim, 0.0) {}

  std::span<double> at(std::size_t j) {
    return {values.data() + j * dimension, dimension};
  }
  std::span<const double> at(std::size_t j) const {
    return {values.data() + j * dimension, dimension};
  }

  // Copy of one component across all nodes.
  std::vector<double> component(std::size_t c) const {
    std::vector<double> out(grid.nodes());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = values[j * dimension + c];
    return out;
  }
};

// Composite trapezoidal quadrature of nodal samples over the grid.
inline double trapezoid(std::span<const double> y, double h) {
  if (y.size() < 2) return 0.0;
  double acc = 0.5 * (y.front() + y.back());
  for (std::size_t j = 1; j + 1 < y.size(); ++j) acc += y[j];
  return acc * h;
}

}  // namespace fractb
