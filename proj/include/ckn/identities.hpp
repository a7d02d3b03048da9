#pragma once

// Pointwise identities of the weighted rigidity argument: the pressure
// scalar P[v], the curvature-drift quadratic k[v] in its direct and
// decomposed forms, the chain rule for grad P, and the weighted divergence
// identity that ties the flux of v^{2-n} grad_g P to n v^{1-n} k[v].
// Every check evaluates both sides independently through jets and reports
// a residual normalized by |lhs| + |rhs| + 1.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ckn/fields.hpp"
#include "ckn/geometry.hpp"
#include "ckn/jet.hpp"

namespace ckn {

// P[v] = 2 / ((n-2) v) + (n/2) |grad_g v|_g^2 / v.  Throws NonPositiveField
// when v <= 0 at the point.
double p_value(const Jetd& v, const GeomFrame& frame);

// Order-2 jet of P[v] built from an order-3 jet of v.
Jetd p_jet(const Jetd& v, const GeomFrame& frame);

// k[v] = |H_g v|_g^2 - (Delta_g v - grad f . grad v)^2 / n
//        + Ric_g(grad_g v, grad_g v) + H_g f(grad_g v, grad_g v).
double k_direct(const Jetd& v, const GeomFrame& frame);

// Sum of magnitudes of the four constituents of k; the natural scale
// against which "k = 0" is judged.
double k_scale(const Jetd& v, const GeomFrame& frame);

// Sum-of-squares regrouping of k:
//   traceless_sq   = |H_g v - (Delta_g v / d) g|_g^2
//   radial_defect  = (n-d)/(nd) (Delta_g v - alpha d (grad_g v . x)/|x|^2)^2
//   angular_weight = (d - 2 - alpha^2 (n-2))/|x|^2
//                    (|grad_g v|^2 - (grad_g v . x)^2/|x|^2)
// where grad_g v enters through its contravariant components.
struct KDecomposition {
  double traceless_sq = 0;
  double radial_defect = 0;
  double angular_weight = 0;
  double total() const { return traceless_sq + radial_defect + angular_weight; }
};

KDecomposition k_decomposed(const Jetd& v, const GeomFrame& frame);

struct TwoSidedCheck {
  double lhs = 0, rhs = 0;
  double rel_residual() const;
};

// Weighted divergence identity (valid for any real n, any drift potential):
//   e^f div_g( e^{-f} v^{1-n} [ (n/2) grad_g |grad_g v|_g^2
//                               - n (Lv) grad_g v + (n-1) P grad_g v ] )
//   = n v^{1-n} k[v] + v (Lv - P) L(v^{1-n}).
// Needs an order-3 jet of v.
TwoSidedCheck divergence_identity_check(const Jetd& v, const GeomFrame& frame);

// Specialized flux form along a profile:
//   e^f div_g( e^{-f} v^{2-n} grad_g P ) = n v^{1-n} k[v].
// This is an identity only when Lv = P (it is how the rigidity flow is
// closed); on arbitrary fields the two sides differ.
TwoSidedCheck pressure_flux_check(const Jetd& v, const GeomFrame& frame);

struct VectorCheck {
  Eigen::VectorXd lhs, rhs;
  double rel_residual = 0;
};

// Chain rule: grad P = -(P/v) grad v + (n / 2v) grad |grad_g v|_g^2,
// compared in covariant components against direct differentiation of the
// P jet.
VectorCheck grad_p_chain_rule_check(const Jetd& v, const GeomFrame& frame);

// ----- randomized suite -----------------------------------------------------

struct IdentityReport {
  std::string identity;
  int samples = 0;
  double max_rel_residual = 0;
  double tolerance = 0;
  bool pass = false;
  Eigen::VectorXd worst_point;
};

struct IdentitySuiteConfig {
  int trials = 1000;
  std::uint64_t seed = 0;
  // When set, pin the corresponding tuple entries instead of randomizing.
  std::optional<int> fixed_d;
  std::optional<double> fixed_n;
  std::optional<double> fixed_alpha;
};

// Runs the full randomized battery over tuples (field, point, d, n, alpha):
//   - the divergence identity (tolerance 1e-8),
//   - direct vs decomposed k (1e-10),
//   - grad P chain rule (1e-10),
//   - k >= 0 whenever alpha^2 <= (d-2)/(n-2) (floor -1e-12 * scale),
//   - k = 0 on the rigidity family (1e-10 * scale),
//   - positive k for a symmetry-broken perturbation (floor 1e-4).
std::vector<IdentityReport> run_identity_suite(const IdentitySuiteConfig& cfg);

}  // namespace ckn
