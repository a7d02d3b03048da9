#pragma once

// First nontrivial Neumann eigenvalue of the Laplace-Beltrami operator on a
// cone cross-section (planar arc, spherical cap, or the full sphere), plus
// the convexity-threshold scan lambda1 >= d-1.

#include <string>
#include <vector>

#include "ckn/cone.hpp"

namespace ckn {

struct EigenResult {
  double lambda1 = 0;
  std::string branch;       // "axisymmetric" or "first-angular"
  std::string solver_info;  // mesh / tolerance metadata
};

// Closed form for the arc of opening theta in (0, 2pi): (pi/theta)^2.
EigenResult arc_lambda1(double theta);

// Independent finite-difference oracle for the arc: cell-centered Neumann
// Laplacian on (0, theta); returns the second-smallest eigenvalue of the
// assembled tridiagonal matrix via Sturm bisection.
double arc_lambda1_fd(double theta, int n_cells);

// Three-level Richardson extrapolation of the FD value (n, 2n, 4n cells).
double arc_lambda1_fd_richardson(double theta, int n_cells);

// Full sphere S^{d-1}: first nonzero eigenvalue d-1 (degree-1 harmonics).
EigenResult sphere_lambda1(int d);

struct CapSolveOptions {
  double theta0 = 1e-4;       // series-start radius at the pole
  double ode_rtol = 1e-10;    // shooting integrator relative tolerance
  double bisect_tol = 1e-8;   // eigenvalue bisection width
  double lambda_max = 5000;   // scan ceiling before giving up
};

// Ground eigenvalue of the angular-mode-m branch on the cap of geodesic
// radius theta in (0.05, pi-0.05):
//   u'' + cot(t) u' + (lambda - m^2/sin^2 t) u = 0,  regular at 0, u'(theta)=0,
// excluding the constant solution on the m=0 branch.
double cap_branch_lambda1(double theta, int m, const CapSolveOptions& opts = {});

// min over the m=0 and m=1 branches, labelled accordingly.
EigenResult cap_lambda1(double theta, const CapSolveOptions& opts = {});

struct SpectrumRow {
  double theta = 0;
  double lambda1 = 0;
  std::string branch;
  bool convex = false;
  bool threshold_ok = false;  // convex rows must satisfy lambda1 >= d-1 - 1e-9
};

// Per-theta lambda1 with convexity flags, for arc or cap cross-sections.
std::vector<SpectrumRow> convexity_scan(ConeSpec::Kind kind,
                                        const std::vector<double>& thetas,
                                        const CapSolveOptions& opts = {});

}  // namespace ckn
