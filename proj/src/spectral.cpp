#include "ckn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "ckn/errors.hpp"
#include "ckn/ode.hpp"

namespace ckn {

EigenResult arc_lambda1(double theta) {
  if (!(theta > 0.0 && theta < 2.0 * M_PI))
    throw DomainError("arc opening must lie in (0, 2pi)");
  EigenResult res;
  res.lambda1 = (M_PI / theta) * (M_PI / theta);
  res.branch = "first-angular";
  res.solver_info = "closed-form";
  return res;
}

namespace {

// Number of eigenvalues of the symmetric tridiagonal (diag, off) strictly
// below x, via the Sturm / LDL^T sign count.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off,
                double x) {
  const int n = static_cast<int>(diag.size());
  int count = 0;
  double q = diag[0] - x;
  if (q < 0) ++count;
  for (int i = 1; i < n; ++i) {
    if (q == 0.0) q = 1e-300;
    q = diag[i] - x - off[i - 1] * off[i - 1] / q;
    if (q < 0) ++count;
  }
  return count;
}

// k-th smallest eigenvalue (k = 1 is the smallest) by bisection on the count.
double sturm_kth(const std::vector<double>& diag, const std::vector<double>& off,
                 int k) {
  double lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double radius = (i > 0 ? std::abs(off[i - 1]) : 0.0) +
                          (i + 1 < diag.size() ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi));
       ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(diag, off, mid) >= k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double arc_lambda1_fd(double theta, int n_cells) {
  if (!(theta > 0.0 && theta < 2.0 * M_PI))
    throw DomainError("arc opening must lie in (0, 2pi)");
  const double h = theta / n_cells;
  const double w = 1.0 / (h * h);
  std::vector<double> diag(n_cells, 2.0 * w), off(n_cells - 1, -w);
  diag.front() = w;  // cell-centered Neumann closure
  diag.back() = w;
  // The smallest eigenvalue is the exact zero of the constant mode; the first
  // nontrivial one is the second smallest.
  return sturm_kth(diag, off, 2);
}

double arc_lambda1_fd_richardson(double theta, int n_cells) {
  const double l1 = arc_lambda1_fd(theta, n_cells);
  const double l2 = arc_lambda1_fd(theta, 2 * n_cells);
  const double l4 = arc_lambda1_fd(theta, 4 * n_cells);
  const double r1 = (4.0 * l2 - l1) / 3.0;
  const double r2 = (4.0 * l4 - l2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

EigenResult sphere_lambda1(int d) {
  EigenResult res;
  res.lambda1 = d - 1.0;
  res.branch = "axisymmetric";
  res.solver_info = "closed-form";
  return res;
}

namespace {

// u'(theta) for the branch-m Legendre-type equation at trial eigenvalue
// lambda, integrating from a series start at theta0.
double cap_shoot(double theta, int m, double lambda,
                 const CapSolveOptions& opts) {
  const double t0 = opts.theta0;
  const double c = (m * (m + 1) / 3.0 - lambda) / (4.0 * (m + 1));
  Eigen::Vector2d y0;
  y0[0] = std::pow(t0, m) * (1.0 + c * t0 * t0);
  y0[1] = (m > 0 ? m * std::pow(t0, m - 1) : 0.0) +
          (m + 2) * c * std::pow(t0, m + 1);
  auto rhs = [m, lambda](double t, const Eigen::Vector2d& y) {
    const double s = std::sin(t);
    Eigen::Vector2d dy;
    dy[0] = y[1];
    dy[1] = -(std::cos(t) / s) * y[1] - (lambda - m * m / (s * s)) * y[0];
    return dy;
  };
  OdeOptions ode;
  ode.rtol = opts.ode_rtol;
  ode.atol = 1e-14;
  return integrate_ode(rhs, t0, y0, theta, ode).y[1];
}

}  // namespace

double cap_branch_lambda1(double theta, int m, const CapSolveOptions& opts) {
  if (!(theta > 0.05 && theta < M_PI - 0.05))
    throw DomainError("cap solver window is (0.05, pi - 0.05)");
  // Scan upward for the first sign change of the Neumann mismatch, then
  // bisect.  Starting just above 0 excludes the constant m=0 solution.
  double lambda_lo = 1e-3;
  double g_lo = cap_shoot(theta, m, lambda_lo, opts);
  double lambda = lambda_lo;
  double g = g_lo;
  bool bracketed = false;
  while (lambda < opts.lambda_max) {
    const double step = std::max(0.2, 0.03 * lambda);
    const double lambda_next = lambda + step;
    const double g_next = cap_shoot(theta, m, lambda_next, opts);
    if (g * g_next <= 0.0 && g != 0.0) {
      lambda_lo = lambda;
      g_lo = g;
      lambda = lambda_next;
      g = g_next;
      bracketed = true;
      break;
    }
    lambda = lambda_next;
    g = g_next;
  }
  if (!bracketed)
    throw NoConvergence("no Neumann eigenvalue bracket below the scan ceiling");

  double hi = lambda;
  double lo = lambda_lo;
  while (hi - lo > opts.bisect_tol) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = cap_shoot(theta, m, mid, opts);
    if (g_lo * g_mid <= 0.0)
      hi = mid;
    else {
      lo = mid;
      g_lo = g_mid;
    }
  }
  return 0.5 * (lo + hi);
}

EigenResult cap_lambda1(double theta, const CapSolveOptions& opts) {
  const double l0 = cap_branch_lambda1(theta, 0, opts);
  const double l1 = cap_branch_lambda1(theta, 1, opts);
  EigenResult res;
  if (l1 <= l0) {
    res.lambda1 = l1;
    res.branch = "first-angular";
  } else {
    res.lambda1 = l0;
    res.branch = "axisymmetric";
  }
  char info[64];
  std::snprintf(info, sizeof(info), "shooting theta0=%g rtol=%g", opts.theta0,
                opts.ode_rtol);
  res.solver_info = info;
  return res;
}

std::vector<SpectrumRow> convexity_scan(ConeSpec::Kind kind,
                                        const std::vector<double>& thetas,
                                        const CapSolveOptions& opts) {
  std::vector<SpectrumRow> rows;
  const bool is_arc = kind == ConeSpec::Kind::arc;
  const int d = is_arc ? 2 : 3;
  for (const double theta : thetas) {
    const ConeSpec cone =
        is_arc ? ConeSpec::make_arc(theta) : ConeSpec::make_cap(theta);
    const EigenResult eig =
        is_arc ? arc_lambda1(theta) : cap_lambda1(theta, opts);
    SpectrumRow row;
    row.theta = theta;
    row.lambda1 = eig.lambda1;
    row.branch = eig.branch;
    row.convex = cone.convex();
    row.threshold_ok = !row.convex || row.lambda1 >= d - 1.0 - 1e-9;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ckn
