#pragma once

// Finite-difference oracle for the jet tests: mixed partial derivatives of
// arbitrary scalar callables by nested fourth-order centered stencils.
// Independent of the jet machinery, so agreement is evidence rather than
// tautology.

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <vector>

namespace testutil {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

// d^{|axes|} f / dx_{axes[0]} ... dx_{axes[k-1]} at x, each level resolved
// by the five-point fourth-order centered first-derivative stencil.
inline double fd_partial(const ScalarField& f, const Eigen::VectorXd& x,
                         const std::vector<int>& axes, double h,
                         std::size_t from = 0) {
  if (from == axes.size()) return f(x);
  const int axis = axes[from];
  const auto shifted = [&](double t) {
    Eigen::VectorXd y = x;
    y[axis] += t;
    return fd_partial(f, y, axes, h, from + 1);
  };
  return (-shifted(2 * h) + 8 * shifted(h) - 8 * shifted(-h) +
          shifted(-2 * h)) /
         (12 * h);
}

// Step sizes balancing truncation against cancellation per order.
inline double fd_step(int order) { return order >= 3 ? 4e-3 : 1e-3; }

}  // namespace testutil
