#pragma once

// Symmetry-breaking detector: minimize the quotient
//   Q[phi] = (int |d_s phi|^2 + |d_omega phi|^2 + Lambda phi^2) / (int phi^p)^{2/p}
// on a discretized two-dimensional cylinder R x S^1 (log-radial coordinates
// for d = 2), once constrained to angle-independent fields and once free,
// and compare the two minima.

#include <Eigen/Dense>

#include "ckn/params.hpp"

namespace ckn {

struct CylinderGrid {
  double S = 10.0;   // half-length in s
  int n_s = 256;     // nodes along s (Neumann ends)
  int n_omega = 64;  // periodic nodes along omega
  double h_s() const { return 2.0 * S / (n_s - 1); }
  double h_omega() const;
};

// Trapezoid-in-s / periodic-in-omega quadrature of the quotient with
// second-order edge differences.  Fields are n_s x n_omega matrices.
double rayleigh_quotient(const CylinderGrid& grid, const Eigen::MatrixXd& phi,
                         double Lambda, double p);

struct MinimizeOptions {
  int max_iters = 20000;
  double init_step = 0.1;
  double conv_tol = 1e-9;  // relative energy decrease over the window
  int conv_window = 50;
  unsigned long long seed = 0;
  double angular_amplitude = 0.3;  // cos(omega) modulation of the seed field
  double noise = 0.0;              // optional random perturbation amplitude
};

struct MinimizeResult {
  Eigen::MatrixXd phi;
  double energy = 0;  // Q at the unit-mass normalized minimizer
  int iterations = 0;
  bool converged = false;
  int clipped_last_iter = 0;  // positivity clips in the final accepted step
};

// Projected gradient descent with backtracking; `radial` replaces the field
// by its omega-average every step.  Deterministic for a fixed seed.
MinimizeResult minimize_quotient(const CylinderGrid& grid, double Lambda,
                                 double p, bool radial,
                                 const MinimizeOptions& opts = {});

struct EnergyReport {
  double a = 0, b = 0;
  double Lambda = 0, p = 0;
  double alpha = 0, alpha_fs = 0;
  double energy_radial = 0;
  double energy_full = 0;
  double deficit = 0;  // (E_radial - E_full) / E_radial
  bool classifier_breaking = false;
  bool numerical_breaking = false;  // deficit > 5e-3
  int iterations_radial = 0;
  int iterations_full = 0;
  bool converged = false;
  bool near_curve = false;  // |alpha - alpha_fs| < 0.1: dichotomy not resolved
};

// Radial + free minimization for one admissible d=2 parameter pair; the free
// run additionally considers the radial minimizer as a candidate, so
// energy_full <= energy_radial holds by construction.
EnergyReport breaking_report(const CknParams& params, const CylinderGrid& grid,
                             const MinimizeOptions& opts = {});

std::vector<EnergyReport> breaking_scan(const std::vector<CknParams>& points,
                                        const CylinderGrid& grid,
                                        const MinimizeOptions& opts = {});

}  // namespace ckn
