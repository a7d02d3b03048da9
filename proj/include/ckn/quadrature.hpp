#pragma once

// Gauss-Legendre rules and a radial integrator for weights rho^c with
// real c > -1: the substitution rho = e^t turns the integrand into a
// smooth exponential on a finite log window, integrated by composite
// Gauss-Legendre panels.  Halving `panel_width` is the built-in
// self-consistency refinement.

#include <Eigen/Dense>

#include <functional>

namespace ckn {

struct GaussRule {
  Eigen::VectorXd nodes;    // on [-1, 1]
  Eigen::VectorXd weights;
};

// Nodes by Newton iteration on the Legendre recurrence; cached per order.
const GaussRule& gauss_rule(int points);

struct RadialQuadOptions {
  int nodes_per_panel = 16;
  double panel_width = 0.5;  // in t = log rho
  double tail_drop = 45.0;   // window depth: e^{-tail_drop} relative cutoff
};

// integral_0^rho_max rho^power * extra(rho) d rho, requiring power > -1
// and `extra` smooth and bounded near 0.
double radial_power_integral(double power, double rho_max,
                             const std::function<double(double)>& extra,
                             const RadialQuadOptions& opts = {});

}  // namespace ckn
