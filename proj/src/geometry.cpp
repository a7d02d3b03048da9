#include "ckn/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "ckn/errors.hpp"
#include "ckn/rng.hpp"

namespace ckn {

Jetd radius_sq_jet(const Eigen::VectorXd& x, int order,
                   const Eigen::VectorXd& x0) {
  const int d = static_cast<int>(x.size());
  Jetd r2 = Jetd::constant(d, order, 0.0);
  for (int i = 0; i < d; ++i) {
    const Jetd xi = Jetd::coordinate(d, order, i, x[i] - x0[i]);
    r2 = r2 + xi * xi;
  }
  return r2;
}

Jetd radius_sq_jet(const Eigen::VectorXd& x, int order) {
  return radius_sq_jet(x, order, Eigen::VectorXd::Zero(x.size()));
}

GeomFrame make_frame(const Eigen::VectorXd& x, double alpha, double n) {
  GeomFrame fr;
  fr.x = x;
  fr.alpha = alpha;
  fr.n = n;
  fr.d = static_cast<int>(x.size());
  const double r2 = x.squaredNorm();
  if (r2 == 0.0)
    throw DomainError("geometry frame requested at the conical singularity");

  // log|x| = (1/2) log |x|^2, differentiated exactly through the jet.
  const Jetd log_r = 0.5 * log(radius_sq_jet(x, kMaxJetOrder));
  fr.phi_jet = (alpha - 1.0) * log_r;
  fr.f_jet = (-alpha * (n - fr.d)) * log_r;
  fr.conformal_factor = std::pow(r2, alpha - 1.0);
  fr.inv_conformal_factor = 1.0 / fr.conformal_factor;
  return fr;
}

double TensorAtPoint::g_norm_sq() const {
  const double iw = 1.0 / (metric_weight * metric_weight);
  return iw * components.squaredNorm();
}

double TensorAtPoint::quad(const Eigen::VectorXd& contravariant) const {
  return contravariant.dot(components * contravariant);
}

double TensorAtPoint::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(components);
  return es.eigenvalues().minCoeff();
}

GradData grad_norms(const Jetd& v, const GeomFrame& frame) {
  GradData g;
  g.grad.resize(frame.d);
  for (int i = 0; i < frame.d; ++i) g.grad[i] = v.d(i);
  g.grad_contra = frame.inv_conformal_factor * g.grad;
  g.g_norm_sq = frame.inv_conformal_factor * g.grad.squaredNorm();
  return g;
}

TensorAtPoint hessian_g(const Jetd& v, const GeomFrame& frame) {
  const int d = frame.d;
  Eigen::VectorXd dv(d), dphi(d);
  for (int i = 0; i < d; ++i) {
    dv[i] = v.d(i);
    dphi[i] = frame.phi_jet.d(i);
  }
  const double cross = dphi.dot(dv);

  TensorAtPoint t;
  t.metric_weight = frame.conformal_factor;
  t.components.resize(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      t.components(i, j) = v.d(i, j) + (i == j ? cross : 0.0) -
                           dphi[i] * dv[j] - dphi[j] * dv[i];
  return t;
}

LaplaceDrift laplace_and_drift(const Jetd& v, const GeomFrame& frame) {
  const int d = frame.d;
  double lap = 0, phi_dot = 0, f_dot = 0;
  for (int i = 0; i < d; ++i) {
    lap += v.d(i, i);
    phi_dot += frame.phi_jet.d(i) * v.d(i);
    f_dot += frame.f_jet.d(i) * v.d(i);
  }
  LaplaceDrift out;
  out.laplace_g = frame.inv_conformal_factor * (lap + (d - 2) * phi_dot);
  out.drift = out.laplace_g - frame.inv_conformal_factor * f_dot;
  return out;
}

double weighted_divergence(const std::vector<Jetd>& contravariant,
                           const GeomFrame& frame) {
  double acc = 0;
  for (int i = 0; i < frame.d; ++i) {
    const Jetd& Xi = contravariant[i];
    acc += Xi.d(i) +
           (frame.d * frame.phi_jet.d(i) - frame.f_jet.d(i)) * Xi.value();
  }
  return acc;
}

double drift_via_divergence(const Jetd& v, const GeomFrame& frame) {
  const Jetd icf = metric_inv_factor_jet(frame, v.order() - 1);
  std::vector<Jetd> X;
  X.reserve(frame.d);
  for (int i = 0; i < frame.d; ++i)
    X.push_back(icf * partial_derivative(v, i));
  return weighted_divergence(X, frame);
}

TensorAtPoint ricci_closed_form(const GeomFrame& frame) {
  const int d = frame.d;
  const double r2 = frame.x.squaredNorm();
  const double c = (d - 2) * (1 - frame.alpha * frame.alpha) / r2;

  TensorAtPoint t;
  t.metric_weight = frame.conformal_factor;
  t.components.resize(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      t.components(i, j) =
          c * ((i == j ? 1.0 : 0.0) - frame.x[i] * frame.x[j] / r2);
  return t;
}

TensorAtPoint ricci_conformal(const GeomFrame& frame) {
  const int d = frame.d;
  Eigen::VectorXd dphi(d);
  double lap_phi = 0;
  for (int i = 0; i < d; ++i) {
    dphi[i] = frame.phi_jet.d(i);
    lap_phi += frame.phi_jet.d(i, i);
  }
  const double trace_part = lap_phi + (d - 2) * dphi.squaredNorm();

  TensorAtPoint t;
  t.metric_weight = frame.conformal_factor;
  t.components.resize(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      t.components(i, j) =
          -(d - 2) * (frame.phi_jet.d(i, j) - dphi[i] * dphi[j]) -
          (i == j ? trace_part : 0.0);
  return t;
}

TensorAtPoint ricci_from_christoffel(const GeomFrame& frame) {
  const int d = frame.d;
  Eigen::VectorXd dphi(d);
  Eigen::MatrixXd ddphi(d, d);
  for (int i = 0; i < d; ++i) {
    dphi[i] = frame.phi_jet.d(i);
    for (int j = 0; j < d; ++j) ddphi(i, j) = frame.phi_jet.d(i, j);
  }

  // Christoffel symbols of a conformal metric:
  // Gamma^k_ij = delta_ik phi_j + delta_jk phi_i - delta_ij phi_k.
  auto gamma = [&](int k, int i, int j) {
    double g = 0;
    if (i == k) g += dphi[j];
    if (j == k) g += dphi[i];
    if (i == j) g -= dphi[k];
    return g;
  };
  // d_l Gamma^k_ij, same structure on second partials of phi.
  auto dgamma = [&](int l, int k, int i, int j) {
    double g = 0;
    if (i == k) g += ddphi(j, l);
    if (j == k) g += ddphi(i, l);
    if (i == j) g -= ddphi(k, l);
    return g;
  };

  TensorAtPoint t;
  t.metric_weight = frame.conformal_factor;
  t.components.resize(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double r = 0;
      for (int k = 0; k < d; ++k) {
        r += dgamma(k, k, i, j) - dgamma(i, k, k, j);
        for (int l = 0; l < d; ++l)
          r += gamma(k, k, l) * gamma(l, i, j) -
               gamma(k, i, l) * gamma(l, k, j);
      }
      t.components(i, j) = r;
    }
  }
  return t;
}

TensorAtPoint hess_f_closed_form(const GeomFrame& frame) {
  const int d = frame.d;
  const double r2 = frame.x.squaredNorm();
  const double c = -frame.alpha * frame.alpha * (frame.n - d) / r2;

  TensorAtPoint t;
  t.metric_weight = frame.conformal_factor;
  t.components.resize(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      t.components(i, j) =
          c * ((i == j ? 1.0 : 0.0) - 2.0 * frame.x[i] * frame.x[j] / r2);
  return t;
}

Jetd metric_inv_factor_jet(const GeomFrame& frame, int order) {
  return exp((-2.0) * frame.phi_jet.truncated(order));
}

RicciSuiteReport ricci_agreement_suite(int samples, std::uint64_t seed) {
  Rng rng(seed);
  RicciSuiteReport report;
  report.samples = samples;
  report.worst_min_eigenvalue = 0;

  for (int t = 0; t < samples; ++t) {
    const int d = rng.uniform_int(2, 4);
    const double alpha = rng.uniform(0.2, 1.5);
    const double radius =
        std::exp(rng.uniform(std::log(0.3), std::log(3.0)));
    const Eigen::VectorXd x = radius * rng.unit_vector(d);
    const GeomFrame frame = make_frame(x, alpha, d + 1.0);

    const TensorAtPoint closed = ricci_closed_form(frame);
    const TensorAtPoint conf = ricci_conformal(frame);
    const TensorAtPoint christoffel = ricci_from_christoffel(frame);

    auto rel = [](const TensorAtPoint& lhs, const TensorAtPoint& rhs) {
      return (lhs.components - rhs.components).norm() /
             (lhs.components.norm() + rhs.components.norm() + 1.0);
    };
    report.max_rel_disagreement = std::max(
        {report.max_rel_disagreement, rel(closed, conf),
         rel(closed, christoffel), rel(conf, christoffel)});

    if (alpha <= 1.0) {
      ++report.psd_samples;
      const double scaled =
          conf.min_eigenvalue() * x.squaredNorm();
      report.worst_min_eigenvalue =
          std::min(report.worst_min_eigenvalue, scaled);
    }
  }
  return report;
}

}  // namespace ckn
