#include "ckn/fields.hpp"

#include <cmath>

#include "ckn/errors.hpp"
#include "ckn/geometry.hpp"
#include "ckn/rng.hpp"

namespace ckn {

namespace {

// 1 + (lambda |x - x0|)^{2 alpha} as a jet; shared by u and v.
Jetd profile_core_jet(const ExtremalSpec& spec, const Eigen::VectorXd& x,
                      int order) {
  const double alpha = spec.params.alpha;
  const Eigen::VectorXd c = spec.center();
  if ((x - c).squaredNorm() == 0.0)
    throw DomainError("profile jet requested at its center");
  const Jetd r2 = radius_sq_jet(x, order, c);
  const double scale = std::pow(spec.lambda, 2.0 * alpha);
  return scale * pow(r2, alpha) + 1.0;
}

}  // namespace

Jetd extremal_u_jet(const ExtremalSpec& spec, const Eigen::VectorXd& x,
                    int order) {
  const Jetd core = profile_core_jet(spec, x, order);
  // -2/(p-2) = -(n-2)/2 by the exponent relation (p-2)(n-2) = 4.
  return spec.mu * pow(core, -2.0 / (spec.params.p - 2.0));
}

Jetd extremal_v_jet(const ExtremalSpec& spec, const Eigen::VectorXd& x,
                    int order) {
  const Jetd core = profile_core_jet(spec, x, order);
  const double amp = std::pow(spec.mu, -2.0 / (spec.params.n - 2.0));
  return amp * core;
}

double extremal_u(const ExtremalSpec& spec, const Eigen::VectorXd& x) {
  const double r = (x - spec.center()).norm();
  const double core = 1.0 + std::pow(spec.lambda * r, spec.params.beta);
  return spec.mu * std::pow(core, -2.0 / (spec.params.p - 2.0));
}

double extremal_v(const ExtremalSpec& spec, const Eigen::VectorXd& x) {
  const double r = (x - spec.center()).norm();
  const double core =
      1.0 + std::pow(spec.lambda * r, 2.0 * spec.params.alpha);
  return std::pow(spec.mu, -2.0 / (spec.params.n - 2.0)) * core;
}

TestField make_rigidity_field(int dim, double c1, double c2, double alpha,
                              const Eigen::VectorXd& x0) {
  TestField f;
  f.dim = dim;
  RigidityField r;
  r.c1 = c1;
  r.c2 = c2;
  r.alpha = alpha;
  r.x0 = x0.size() ? x0 : Eigen::VectorXd::Zero(dim);
  f.kind = r;
  return f;
}

TestField make_radial_power(int dim, double gamma) {
  TestField f;
  f.dim = dim;
  f.kind = RadialPowerField{gamma};
  return f;
}

TestField make_gaussian_bump(const Eigen::VectorXd& center, double width,
                             double floor) {
  TestField f;
  f.dim = static_cast<int>(center.size());
  f.kind = GaussianBumpField{center, width, floor};
  return f;
}

TestField make_random_mix(int dim, std::uint64_t seed, int bumps) {
  Rng rng(seed);
  RandomMixField m;
  m.floor = 0.5;
  for (int j = 0; j < bumps; ++j) {
    m.weights.push_back(rng.uniform(0.2, 1.0));
    Eigen::VectorXd z(dim);
    for (int i = 0; i < dim; ++i) z[i] = rng.uniform(-1.2, 1.2);
    m.centers.push_back(z);
    m.widths.push_back(rng.uniform(0.8, 1.6));
  }
  TestField f;
  f.dim = dim;
  f.kind = m;
  return f;
}

Jetd eval_jet(const TestField& field, const Eigen::VectorXd& x, int order) {
  Jetd out;
  if (const auto* r = std::get_if<RigidityField>(&field.kind)) {
    const Jetd r2 = radius_sq_jet(x, order, r->x0);
    if (r2.value() == 0.0)
      throw DomainError("rigidity field jet requested at its center");
    out = r->c1 * pow(r2, r->alpha) + r->c2;
  } else if (const auto* rp = std::get_if<RadialPowerField>(&field.kind)) {
    const Jetd r2 = radius_sq_jet(x, order);
    if (r2.value() == 0.0)
      throw DomainError("radial power jet requested at the origin");
    out = pow(r2, rp->gamma / 2.0);
  } else if (const auto* gb = std::get_if<GaussianBumpField>(&field.kind)) {
    const Jetd r2 = radius_sq_jet(x, order, gb->center);
    out = exp((-1.0 / (gb->width * gb->width)) * r2) + gb->floor;
  } else {
    const auto& m = std::get<RandomMixField>(field.kind);
    out = Jetd::constant(static_cast<int>(x.size()), order, m.floor);
    for (size_t j = 0; j < m.weights.size(); ++j) {
      const Jetd r2 = radius_sq_jet(x, order, m.centers[j]);
      out = out +
            m.weights[j] *
                exp((-1.0 / (m.widths[j] * m.widths[j])) * r2);
    }
  }
  if (!(out.value() > 0.0))
    throw NonPositiveField("test field is not positive at the sample point");
  return out;
}

double eval(const TestField& field, const Eigen::VectorXd& x) {
  return eval_jet(field, x, 0).value();
}

namespace {

double log_uniform_radius(Rng& rng) {
  const double t = rng.uniform(std::log(kAnnulusInner),
                               std::log(kAnnulusOuter));
  return std::exp(t);
}

Eigen::VectorXd cone_direction(const ConeSpec& cone, Rng& rng) {
  if (cone.kind == ConeSpec::Kind::arc) {
    const double t = rng.uniform(-cone.theta / 2, cone.theta / 2);
    return Eigen::Vector2d(std::cos(t), std::sin(t));
  }
  // Area-uniform polar angle on the cap, uniform azimuth.
  const double c = rng.uniform(std::cos(cone.theta), 1.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  const double psi = rng.uniform(0.0, 2.0 * M_PI);
  return Eigen::Vector3d(s * std::cos(psi), s * std::sin(psi), c);
}

}  // namespace

std::vector<Eigen::VectorXd> sample_annulus(int dim, int count,
                                            std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i)
    pts.push_back(log_uniform_radius(rng) * rng.unit_vector(dim));
  return pts;
}

std::vector<Eigen::VectorXd> sample_cone_interior(const ConeSpec& cone,
                                                  int count,
                                                  std::uint64_t seed) {
  if (cone.kind == ConeSpec::Kind::full_space)
    throw std::invalid_argument("cone sampling requires an arc or a cap");
  Rng rng(seed);
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i)
    pts.push_back(log_uniform_radius(rng) * cone_direction(cone, rng));
  return pts;
}

std::vector<Eigen::VectorXd> sample_cone_boundary(const ConeSpec& cone,
                                                  int count,
                                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double radius = log_uniform_radius(rng);
    const int side = rng.uniform() < 0.5 ? -1 : 1;
    const double azimuth = rng.uniform(0.0, 2.0 * M_PI);
    pts.push_back(cone_boundary_point(cone, radius, azimuth, side));
  }
  return pts;
}

}  // namespace ckn
