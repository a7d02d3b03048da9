#include "ckn/extremal.hpp"

#include <cmath>
#include <limits>

#include "ckn/errors.hpp"
#include "ckn/geometry.hpp"
#include "ckn/identities.hpp"

namespace ckn {

namespace {

double kappa_at(const ExtremalSpec& spec, const Eigen::VectorXd& x) {
  const double a = spec.params.a;
  const double b = spec.params.b;
  const double p = spec.params.p;
  const int d = spec.params.d;

  const Jetd u = extremal_u_jet(spec, x, 2);
  const Jetd weight = pow(radius_sq_jet(x, 1), -a);

  double div = 0;
  for (int i = 0; i < d; ++i) {
    const Jetd flux_i = weight * partial_derivative(u, i).truncated(1);
    div += flux_i.d(i);
  }
  const double r2 = x.squaredNorm();
  const double denom =
      std::pow(r2, -b * p / 2.0) * std::pow(u.value(), p - 1.0);
  return -div / denom;
}

GeomFrame spec_frame(const ExtremalSpec& spec, const Eigen::VectorXd& x) {
  return make_frame(x, spec.params.alpha, spec.params.n);
}

void require_normalized(const ExtremalSpec& spec,
                        const Eigen::VectorXd& probe) {
  const double kappa = kappa_at(spec, probe);
  if (std::abs(kappa - 1.0) > 1e-6)
    throw UnnormalizedSpec("profile is not normalized to unit kappa");
}

}  // namespace

KappaReport estimate_kappa(const ExtremalSpec& spec,
                           const std::vector<Eigen::VectorXd>& pts,
                           double spread_tol) {
  KappaReport report;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0;
  for (const auto& x : pts) {
    const double k = kappa_at(spec, x);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
    sum += k;
  }
  report.points = static_cast<int>(pts.size());
  report.mean = sum / report.points;
  report.spread = (hi - lo) / std::abs(report.mean);
  if (report.spread > spread_tol)
    throw SpreadTooLarge("kappa varies across sample points");
  return report;
}

ExtremalSpec normalized(const ExtremalSpec& spec,
                        const std::vector<Eigen::VectorXd>& pts) {
  const KappaReport report = estimate_kappa(spec, pts);
  ExtremalSpec out = spec;
  out.mu = spec.mu * std::pow(report.mean, 1.0 / (spec.params.p - 2.0));
  out.params.kappa = 1.0;
  return out;
}

PointwiseMax conformal_pde_residual(const ExtremalSpec& spec,
                                    const std::vector<Eigen::VectorXd>& pts) {
  require_normalized(spec, pts.front());
  const double n = spec.params.n;
  PointwiseMax out;
  for (const auto& x : pts) {
    const GeomFrame frame = spec_frame(spec, x);
    const Jetd u = extremal_u_jet(spec, x, 2);
    const double Lu = laplace_and_drift(u, frame).drift;
    const double res =
        std::abs(Lu + std::pow(u.value(), (n + 2.0) / (n - 2.0)));
    if (res > out.max_abs) {
      out.max_abs = res;
      out.worst_point = x;
    }
  }
  return out;
}

ConstancyReport check_p_constant(const ExtremalSpec& spec,
                                 const std::vector<Eigen::VectorXd>& pts) {
  require_normalized(spec, pts.front());
  const double n = spec.params.n;
  const double alpha = spec.params.alpha;

  ConstancyReport report;
  report.expected = 2.0 * alpha * std::sqrt(n / (n - 2.0));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0;
  for (const auto& x : pts) {
    const GeomFrame frame = spec_frame(spec, x);
    const Jetd v = extremal_v_jet(spec, x, 1);
    const double P = p_value(v, frame);
    lo = std::min(lo, P);
    hi = std::max(hi, P);
    sum += P;
    report.max_abs_dev =
        std::max(report.max_abs_dev, std::abs(P - report.expected));
  }
  report.points = static_cast<int>(pts.size());
  report.mean = sum / report.points;
  report.spread = (hi - lo) / std::abs(report.mean);
  return report;
}

ScaledMax check_k_zero(const ExtremalSpec& spec,
                       const std::vector<Eigen::VectorXd>& pts) {
  ScaledMax out;
  for (const auto& x : pts) {
    const GeomFrame frame = spec_frame(spec, x);
    const Jetd v = extremal_v_jet(spec, x, 2);
    const double k = k_direct(v, frame);
    const double scaled = std::abs(k) / k_scale(v, frame);
    out.max_abs = std::max(out.max_abs, std::abs(k));
    if (scaled > out.max_scaled) {
      out.max_scaled = scaled;
      out.worst_point = x;
    }
  }
  return out;
}

PointwiseMax check_neumann(const ExtremalSpec& spec, const ConeSpec& cone,
                           const std::vector<Eigen::VectorXd>& boundary_pts) {
  PointwiseMax out;
  for (const auto& x : boundary_pts) {
    const Jetd u = extremal_u_jet(spec, x, 1);
    const Eigen::VectorXd nu = cone_outward_normal(cone, x);
    double dot = 0;
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
      dot += u.d(i) * nu[i];
    if (std::abs(dot) > out.max_abs) {
      out.max_abs = std::abs(dot);
      out.worst_point = x;
    }
  }
  return out;
}

ScalingReport check_scaling_family(const ExtremalSpec& spec,
                                   const std::vector<double>& lambdas,
                                   const std::vector<Eigen::VectorXd>& pts,
                                   std::optional<double> sigma_override) {
  const double sigma =
      sigma_override.value_or(spec.params.a_c - spec.params.a);
  ScalingReport report;
  report.lambdas = lambdas;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const double lam : lambdas) {
    ExtremalSpec member = spec;
    member.lambda = spec.lambda * lam;
    member.mu = spec.mu * std::pow(lam, sigma);
    const KappaReport kap = estimate_kappa(member, pts, 1e-6);
    report.kappas.push_back(kap.mean);
    lo = std::min(lo, kap.mean);
    hi = std::max(hi, kap.mean);
  }
  report.max_rel_variation = (hi - lo) / std::abs(lo);
  return report;
}

}  // namespace ckn
