#pragma once

// Closed-form scalar fields evaluated as jets: the extremal profile family
// and its induced conformal field, plus a small library of positive test
// fields for randomized identity checks, and deterministic point sampling
// on annuli and cones.

#include <Eigen/Dense>

#include <cstdint>
#include <variant>
#include <vector>

#include "ckn/cone.hpp"
#include "ckn/jet.hpp"
#include "ckn/params.hpp"

namespace ckn {

// Profile u(x) = mu (1 + (lambda |x - x0|)^beta)^{-2/(p-2)} with
// beta = 2 alpha; the induced conformal field is
// v = u^{-2/(n-2)} = mu^{-2/(n-2)} (1 + (lambda |x - x0|)^{2 alpha}).
struct ExtremalSpec {
  DerivedParams params;
  double lambda = 1;
  double mu = 1;
  Eigen::VectorXd x0;  // zero-size means the origin

  Eigen::VectorXd center() const {
    return x0.size() ? x0 : Eigen::VectorXd::Zero(params.d);
  }
};

Jetd extremal_u_jet(const ExtremalSpec& spec, const Eigen::VectorXd& x,
                    int order);
Jetd extremal_v_jet(const ExtremalSpec& spec, const Eigen::VectorXd& x,
                    int order);
double extremal_u(const ExtremalSpec& spec, const Eigen::VectorXd& x);
double extremal_v(const ExtremalSpec& spec, const Eigen::VectorXd& x);

// ----- positive test fields ------------------------------------------------

// v = c1 |x - x0|^{2 alpha} + c2 (the rigidity family of the flow argument;
// a free center is only geometric for alpha = 1).
struct RigidityField {
  double c1 = 1, c2 = 1, alpha = 1;
  Eigen::VectorXd x0;
};

// v = |x|^gamma.
struct RadialPowerField {
  double gamma = 2;
};

// v = floor + exp(-|x - center|^2 / width^2).
struct GaussianBumpField {
  Eigen::VectorXd center;
  double width = 1;
  double floor = 0.5;
};

// v = floor + sum_j c_j exp(-|x - z_j|^2 / w_j^2), coefficients drawn
// deterministically from the seed.
struct RandomMixField {
  double floor = 0.5;
  std::vector<double> weights;
  std::vector<Eigen::VectorXd> centers;
  std::vector<double> widths;
};

struct TestField {
  std::variant<RigidityField, RadialPowerField, GaussianBumpField,
               RandomMixField>
      kind;
  int dim = 3;
};

TestField make_rigidity_field(int dim, double c1, double c2, double alpha,
                              const Eigen::VectorXd& x0 = {});
TestField make_radial_power(int dim, double gamma);
TestField make_gaussian_bump(const Eigen::VectorXd& center, double width,
                             double floor);
TestField make_random_mix(int dim, std::uint64_t seed, int bumps = 3);

// Throws NonPositiveField if the field is not strictly positive at x,
// DomainError if x sits on a singular locus (e.g. |x| = 0 for fractional
// radial powers).
Jetd eval_jet(const TestField& field, const Eigen::VectorXd& x, int order);
double eval(const TestField& field, const Eigen::VectorXd& x);

// ----- deterministic sampling ----------------------------------------------

inline constexpr double kAnnulusInner = 0.3;
inline constexpr double kAnnulusOuter = 3.0;

// Log-uniform radius in [kAnnulusInner, kAnnulusOuter], uniform direction.
std::vector<Eigen::VectorXd> sample_annulus(int dim, int count,
                                            std::uint64_t seed);

// Same radial law, directions restricted to the open cone.
std::vector<Eigen::VectorXd> sample_cone_interior(const ConeSpec& cone,
                                                  int count,
                                                  std::uint64_t seed);

// Points on the lateral boundary (radii log-uniform, ring position or
// side drawn uniformly).
std::vector<Eigen::VectorXd> sample_cone_boundary(const ConeSpec& cone,
                                                  int count,
                                                  std::uint64_t seed);

}  // namespace ckn
