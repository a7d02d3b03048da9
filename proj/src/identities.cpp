#include "ckn/identities.hpp"

#include <cmath>

#include "ckn/errors.hpp"
#include "ckn/rng.hpp"

namespace ckn {

namespace {

void require_positive(const Jetd& v) {
  if (!(v.value() > 0.0))
    throw NonPositiveField("pressure of a non-positive field");
}

// |grad_g v|_g^2 as a jet of order v.order() - 1.
Jetd grad_sq_jet(const Jetd& v, const GeomFrame& frame) {
  const int ord = v.order() - 1;
  Jetd acc = Jetd::constant(v.dim(), ord, 0.0);
  for (int i = 0; i < frame.d; ++i) {
    const Jetd vi = partial_derivative(v, i);
    acc = acc + vi * vi;
  }
  return metric_inv_factor_jet(frame, ord) * acc;
}

// Drift Laplacian L v as a jet of order v.order() - 2.
Jetd drift_jet(const Jetd& v, const GeomFrame& frame) {
  const int ord = v.order() - 2;
  const int d = frame.d;
  Jetd lap = Jetd::constant(v.dim(), ord, 0.0);
  Jetd phi_dot = lap, f_dot = lap;
  for (int i = 0; i < d; ++i) {
    const Jetd vi = partial_derivative(v, i).truncated(ord);
    lap = lap + partial_derivative(partial_derivative(v, i), i);
    phi_dot = phi_dot + partial_derivative(frame.phi_jet, i).truncated(ord) * vi;
    f_dot = f_dot + partial_derivative(frame.f_jet, i).truncated(ord) * vi;
  }
  const Jetd icf = metric_inv_factor_jet(frame, ord);
  return icf * (lap + static_cast<double>(d - 2) * phi_dot) - icf * f_dot;
}

}  // namespace

double p_value(const Jetd& v, const GeomFrame& frame) {
  require_positive(v);
  const double n = frame.n;
  const GradData g = grad_norms(v, frame);
  return 2.0 / ((n - 2.0) * v.value()) +
         (n / 2.0) * g.g_norm_sq / v.value();
}

Jetd p_jet(const Jetd& v, const GeomFrame& frame) {
  require_positive(v);
  const double n = frame.n;
  const Jetd grad2 = grad_sq_jet(v, frame);  // order 2
  const Jetd rv = reciprocal(v.truncated(grad2.order()));
  return (2.0 / (n - 2.0)) * rv + (n / 2.0) * (grad2 * rv);
}

double k_direct(const Jetd& v, const GeomFrame& frame) {
  const TensorAtPoint H = hessian_g(v, frame);
  const LaplaceDrift ld = laplace_and_drift(v, frame);
  const GradData g = grad_norms(v, frame);
  const TensorAtPoint ric = ricci_closed_form(frame);
  const TensorAtPoint hf = hess_f_closed_form(frame);
  return H.g_norm_sq() - ld.drift * ld.drift / frame.n +
         ric.quad(g.grad_contra) + hf.quad(g.grad_contra);
}

double k_scale(const Jetd& v, const GeomFrame& frame) {
  const TensorAtPoint H = hessian_g(v, frame);
  const LaplaceDrift ld = laplace_and_drift(v, frame);
  const GradData g = grad_norms(v, frame);
  const TensorAtPoint ric = ricci_closed_form(frame);
  const TensorAtPoint hf = hess_f_closed_form(frame);
  return std::abs(H.g_norm_sq()) + ld.drift * ld.drift / std::abs(frame.n) +
         std::abs(ric.quad(g.grad_contra)) + std::abs(hf.quad(g.grad_contra));
}

KDecomposition k_decomposed(const Jetd& v, const GeomFrame& frame) {
  const int d = frame.d;
  const double n = frame.n;
  const double alpha = frame.alpha;
  const double r2 = frame.x.squaredNorm();

  const TensorAtPoint H = hessian_g(v, frame);
  const LaplaceDrift ld = laplace_and_drift(v, frame);
  const GradData g = grad_norms(v, frame);

  KDecomposition out;

  // Traceless part of the covariant Hessian (g_ij = cf * delta_ij here).
  const double cf = frame.conformal_factor;
  Eigen::MatrixXd T = H.components;
  for (int i = 0; i < d; ++i) T(i, i) -= (ld.laplace_g / d) * cf;
  out.traceless_sq = T.squaredNorm() / (cf * cf);

  const double radial = g.grad_contra.dot(frame.x);
  const double defect = ld.laplace_g - alpha * d * radial / r2;
  out.radial_defect = (n - d) / (n * d) * defect * defect;

  const double grad_sq = g.grad_contra.squaredNorm();
  out.angular_weight = (d - 2.0 - alpha * alpha * (n - 2.0)) / r2 *
                       (grad_sq - radial * radial / r2);
  return out;
}

double TwoSidedCheck::rel_residual() const {
  return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
}

TwoSidedCheck divergence_identity_check(const Jetd& v,
                                        const GeomFrame& frame) {
  require_positive(v);
  const int d = frame.d;
  const double n = frame.n;

  const Jetd grad2 = grad_sq_jet(v, frame);             // order 2
  const Jetd Lv = drift_jet(v, frame);                  // order 1
  const Jetd P = p_jet(v, frame).truncated(1);          // order 1
  const Jetd icf1 = metric_inv_factor_jet(frame, 1);
  const Jetd weight = pow(v, 1.0 - n).truncated(1);

  std::vector<Jetd> X;
  X.reserve(d);
  for (int i = 0; i < d; ++i) {
    const Jetd Gi = icf1 * partial_derivative(v, i).truncated(1);
    const Jetd grad_grad2_i = icf1 * partial_derivative(grad2, i);
    const Jetd inner =
        (n / 2.0) * grad_grad2_i - n * (Lv * Gi) + (n - 1.0) * (P * Gi);
    X.push_back(weight * inner);
  }

  TwoSidedCheck chk;
  chk.lhs = weighted_divergence(X, frame);

  const double k = k_direct(v, frame);
  const Jetd w3 = pow(v, 1.0 - n);
  const double Lw = laplace_and_drift(w3, frame).drift;
  chk.rhs = n * std::pow(v.value(), 1.0 - n) * k +
            v.value() * (Lv.value() - P.value()) * Lw;
  return chk;
}

TwoSidedCheck pressure_flux_check(const Jetd& v, const GeomFrame& frame) {
  require_positive(v);
  const int d = frame.d;
  const double n = frame.n;

  const Jetd P = p_jet(v, frame);  // order 2
  const Jetd icf1 = metric_inv_factor_jet(frame, 1);
  const Jetd weight = pow(v, 2.0 - n).truncated(1);

  std::vector<Jetd> Y;
  Y.reserve(d);
  for (int i = 0; i < d; ++i)
    Y.push_back(weight * (icf1 * partial_derivative(P, i)));

  TwoSidedCheck chk;
  chk.lhs = weighted_divergence(Y, frame);
  chk.rhs = n * std::pow(v.value(), 1.0 - n) * k_direct(v, frame);
  return chk;
}

VectorCheck grad_p_chain_rule_check(const Jetd& v, const GeomFrame& frame) {
  require_positive(v);
  const int d = frame.d;
  const double n = frame.n;

  const Jetd P = p_jet(v, frame);
  const Jetd grad2 = grad_sq_jet(v, frame);
  const double Pv = P.value();
  const double vv = v.value();

  VectorCheck chk;
  chk.lhs.resize(d);
  chk.rhs.resize(d);
  for (int i = 0; i < d; ++i) {
    chk.lhs[i] = P.d(i);
    chk.rhs[i] = -(Pv / vv) * v.d(i) + (n / (2.0 * vv)) * grad2.d(i);
  }
  chk.rel_residual =
      (chk.lhs - chk.rhs).norm() / (chk.lhs.norm() + chk.rhs.norm() + 1.0);
  return chk;
}

namespace {

struct Tracker {
  double worst = 0;
  Eigen::VectorXd where;
  bool seen = false;

  void update(double value, const Eigen::VectorXd& x) {
    if (!seen || value > worst) {
      worst = value;
      where = x;
      seen = true;
    }
  }
};

IdentityReport finish(const std::string& name, int samples, Tracker& t,
                      double tol, bool floor_mode = false) {
  IdentityReport r;
  r.identity = name;
  r.samples = samples;
  r.max_rel_residual = t.worst;
  r.tolerance = tol;
  r.pass = floor_mode ? t.worst >= tol : t.worst <= tol;
  r.worst_point = t.where;
  return r;
}

}  // namespace

std::vector<IdentityReport> run_identity_suite(
    const IdentitySuiteConfig& cfg) {
  Rng rng(cfg.seed);

  Tracker divergence, decomposition, chain_rule, cd_sign, rigidity;
  int cd_samples = 0;

  for (int t = 0; t < cfg.trials; ++t) {
    const int d = cfg.fixed_d ? *cfg.fixed_d : rng.uniform_int(2, 4);
    const double n =
        cfg.fixed_n ? *cfg.fixed_n : rng.uniform(static_cast<double>(d), 8.0);
    const double alpha =
        cfg.fixed_alpha ? *cfg.fixed_alpha : rng.uniform(0.2, 1.5);
    const double radius =
        std::exp(rng.uniform(std::log(kAnnulusInner), std::log(kAnnulusOuter)));
    const Eigen::VectorXd x = radius * rng.unit_vector(d);
    const std::uint64_t field_seed =
        cfg.seed ^ (0x9E3779B97F4A7C15ull * (t + 1));

    const GeomFrame frame = make_frame(x, alpha, n);
    const TestField field = make_random_mix(d, field_seed);
    const Jetd v = eval_jet(field, x, kMaxJetOrder);

    divergence.update(divergence_identity_check(v, frame).rel_residual(), x);

    const double kd = k_direct(v, frame);
    const double kdec = k_decomposed(v, frame).total();
    decomposition.update(
        std::abs(kd - kdec) / (std::abs(kd) + std::abs(kdec) + 1.0), x);

    chain_rule.update(grad_p_chain_rule_check(v, frame).rel_residual, x);

    if (alpha * alpha <= (d - 2.0) / (n - 2.0)) {
      ++cd_samples;
      const double scale = k_scale(v, frame);
      cd_sign.update(kd < 0 ? -kd / scale : 0.0, x);
    }

    // Rigidity family: k vanishes identically.  A free center is only
    // geometric in the translation-invariant case alpha = 1, n = d.
    const bool translated = t % 10 == 0;
    const double r_alpha = translated ? 1.0 : alpha;
    const double r_n = translated ? static_cast<double>(d) : n;
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(d);
    if (translated) x0 = 0.15 * rng.unit_vector(d);
    const TestField rig =
        make_rigidity_field(d, rng.uniform(0.5, 2.0), rng.uniform(0.2, 1.0),
                            r_alpha, x0);
    const GeomFrame rframe = make_frame(x, r_alpha, r_n);
    const Jetd rv = eval_jet(rig, x, kMaxJetOrder);
    rigidity.update(std::abs(k_direct(rv, rframe)) / k_scale(rv, rframe), x);
  }

  // Symmetry-broken perturbation: adding a linear tilt to the rigidity
  // profile must push k strictly positive somewhere in the CD(0,n) regime.
  Tracker probe;
  {
    const int d = 3;
    const double alpha = 0.4, n = 4.0;
    const TestField base = make_rigidity_field(d, 1.0, 1.0, alpha);
    for (const auto& x : sample_annulus(d, 500, cfg.seed + 17)) {
      const GeomFrame frame = make_frame(x, alpha, n);
      const Jetd v = eval_jet(base, x, kMaxJetOrder) +
                     0.1 * Jetd::coordinate(d, kMaxJetOrder, 0, x[0]);
      probe.update(k_direct(v, frame), x);
    }
  }

  std::vector<IdentityReport> reports;
  reports.push_back(
      finish("divergence_identity", cfg.trials, divergence, 1e-8));
  reports.push_back(
      finish("k_decomposition", cfg.trials, decomposition, 1e-10));
  reports.push_back(
      finish("grad_p_chain_rule", cfg.trials, chain_rule, 1e-10));
  reports.push_back(finish("cd_nonnegativity", cd_samples, cd_sign, 1e-12));
  reports.push_back(finish("rigidity_zero", cfg.trials, rigidity, 1e-10));
  reports.push_back(finish("perturbation_positive", 500, probe, 1e-4,
                           /*floor_mode=*/true));
  return reports;
}

}  // namespace ckn
