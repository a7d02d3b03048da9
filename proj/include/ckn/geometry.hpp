#pragma once

// Conformally flat weighted geometry g = |x|^{2(alpha-1)} delta on
// R^d \ {0}, with drift potential f = -alpha (n - d) log|x|.  Everything
// is evaluated pointwise from jets of the conformal exponent
// phi = (alpha - 1) log|x|, so covariant Hessians, the drift Laplacian
// and the curvature tensors come out to machine accuracy.

#include <Eigen/Dense>

#include <cstdint>

#include "ckn/jet.hpp"

namespace ckn {

struct GeomFrame {
  Eigen::VectorXd x;
  double alpha = 1;
  double n = 0;  // effective dimension entering the drift potential
  int d = 0;
  Jetd phi_jet;  // order 3 jet of phi = (alpha - 1) log|x|
  Jetd f_jet;    // order 3 jet of f = -alpha (n - d) log|x|
  double conformal_factor = 1;      // e^{2 phi(x)}
  double inv_conformal_factor = 1;  // e^{-2 phi(x)}
};

// Throws DomainError at x = 0 (the conformal factor is singular there).
GeomFrame make_frame(const Eigen::VectorXd& x, double alpha, double n);

// A (0,2)-tensor at one point in coordinate components, carrying the
// scalar metric weight e^{2 phi} (g_ij = weight * delta_ij there).
struct TensorAtPoint {
  Eigen::MatrixXd components;
  double metric_weight = 1;

  // |T|_g^2 = g^{ik} g^{jl} T_ij T_kl = e^{-4 phi} sum_ij T_ij^2.
  double g_norm_sq() const;
  // T(X, X) for a vector with contravariant components X^i.
  double quad(const Eigen::VectorXd& contravariant) const;
  double min_eigenvalue() const;
};

struct GradData {
  Eigen::VectorXd grad;        // covariant components d_i v
  Eigen::VectorXd grad_contra; // contravariant components e^{-2 phi} d_i v
  double g_norm_sq = 0;        // |grad_g v|_g^2 = e^{-2 phi} sum (d_i v)^2
};

GradData grad_norms(const Jetd& v, const GeomFrame& frame);

// Covariant Hessian of the conformal metric:
// (H_g v)_ij = v_ij + (grad phi . grad v) delta_ij - (phi_i v_j + phi_j v_i).
TensorAtPoint hessian_g(const Jetd& v, const GeomFrame& frame);

struct LaplaceDrift {
  double laplace_g = 0;  // Delta_g v = e^{-2 phi} (Delta v + (d-2) grad phi . grad v)
  double drift = 0;      // L v = Delta_g v - grad_g f ._g grad_g v
};

LaplaceDrift laplace_and_drift(const Jetd& v, const GeomFrame& frame);

// Same drift operator assembled the long way as e^f div_g(e^{-f} grad_g v);
// needs an order-3 jet.  Used to cross-check the two defining forms.
double drift_via_divergence(const Jetd& v, const GeomFrame& frame);

// Weighted divergence e^f div_g(e^{-f} X) of a vector field given by jets
// of its contravariant components: sum_i [d_i X^i + (d phi_i - f_i) X^i].
double weighted_divergence(const std::vector<Jetd>& contravariant,
                           const GeomFrame& frame);

// Ricci tensor, three independent routes.
// Closed form: (d-2)(1-alpha^2)/|x|^2 (delta_ij - x_i x_j / |x|^2).
TensorAtPoint ricci_closed_form(const GeomFrame& frame);
// Generic conformal-change formula evaluated from jets of phi:
// -(d-2)[phi_ij - phi_i phi_j] - (Delta phi + (d-2)|grad phi|^2) delta_ij.
TensorAtPoint ricci_conformal(const GeomFrame& frame);
// Direct curvature assembly from Christoffel symbols of g.
TensorAtPoint ricci_from_christoffel(const GeomFrame& frame);

// Covariant Hessian of the drift potential, closed form:
// -alpha^2 (n-d)/|x|^2 (delta_ij - 2 x_i x_j / |x|^2).
TensorAtPoint hess_f_closed_form(const GeomFrame& frame);

// Order-`order` jet of e^{-2 phi} at the frame point.
Jetd metric_inv_factor_jet(const GeomFrame& frame, int order);

// Jet of |x - x0|^2 at the frame point (from coordinate jets).
Jetd radius_sq_jet(const Eigen::VectorXd& x, int order,
                   const Eigen::VectorXd& x0);
Jetd radius_sq_jet(const Eigen::VectorXd& x, int order);

// Randomized cross-check of the three Ricci routes on annulus samples with
// d in {2,3,4} and alpha in [0.2, 1.5]; also tracks the most negative
// eigenvalue (scaled by |x|^2, the natural curvature magnitude) over the
// alpha <= 1 subset, where the tensor must be positive semidefinite.
struct RicciSuiteReport {
  int samples = 0;
  int psd_samples = 0;
  double max_rel_disagreement = 0;  // pairwise, scaled by |Ric|_g + 1
  double worst_min_eigenvalue = 0;  // most negative scaled eigenvalue seen
};

RicciSuiteReport ricci_agreement_suite(int samples, std::uint64_t seed);

}  // namespace ckn
