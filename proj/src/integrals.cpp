#include "ckn/integrals.hpp"

#include <cmath>
#include <stdexcept>

#include "ckn/errors.hpp"

namespace ckn {

double sphere_measure(int d) {
  return 2.0 * std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0);
}

namespace {

void fit_and_summarize(GrowthReport& report) {
  const int m = static_cast<int>(report.radii.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double ratio_sum = 0;
  for (int i = 0; i < m; ++i) {
    const double lx = std::log(report.radii[i]);
    const double ly = std::log(report.values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    const double ratio =
        report.values[i] / std::pow(report.radii[i], report.expected_exponent);
    report.ratios.push_back(ratio);
    report.ratio_sup = std::max(report.ratio_sup, ratio);
    ratio_sum += ratio;
  }
  report.ratio_mean = ratio_sum / m;
  const double denom = m * sxx - sx * sx;
  report.fitted_exponent = denom != 0 ? (m * sxy - sx * sy) / denom : 0;
}

double angular_factor(const ConeSpec& cone, int d) {
  return cone.kind == ConeSpec::Kind::full_space ? sphere_measure(d)
                                                 : cone.angular_measure();
}

void require_centered(const ExtremalSpec& spec) {
  if (spec.x0.size() && spec.x0.norm() != 0.0)
    throw std::invalid_argument(
        "radial reduction requires a vertex-centered profile");
}

}  // namespace

GrowthReport volume_growth(const DerivedParams& dp,
                           const std::vector<double>& radii,
                           const ConeSpec& cone,
                           const RadialQuadOptions& opts) {
  const double angular = angular_factor(cone, dp.d);
  const double power = dp.alpha * dp.n - 1.0;

  GrowthReport report;
  report.expected_exponent = dp.n;
  for (const double R : radii) {
    const double rho_max = std::pow(R, 1.0 / dp.alpha);
    const double value =
        angular *
        radial_power_integral(power, rho_max, [](double) { return 1.0; },
                              opts);
    report.radii.push_back(R);
    report.values.push_back(value);
  }
  fit_and_summarize(report);
  return report;
}

GrowthReport gradient_energy_growth(const ExtremalSpec& spec,
                                    const std::vector<double>& radii,
                                    const RadialQuadOptions& opts) {
  require_centered(spec);
  const DerivedParams& dp = spec.params;
  const double angular = sphere_measure(dp.d);
  const double power = dp.alpha * dp.n - 1.0;

  // |grad_g v|_g^2 at Euclidean radius rho (the profile is radial, so one
  // direction represents the whole sphere).
  auto grad_sq = [&](double rho) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dp.d);
    x[0] = rho;
    const Jetd v = extremal_v_jet(spec, x, 1);
    double g2 = 0;
    for (int i = 0; i < dp.d; ++i) g2 += v.d(i) * v.d(i);
    return std::pow(rho, 2.0 - 2.0 * dp.alpha) * g2;
  };

  GrowthReport report;
  report.expected_exponent = dp.n + 2.0;
  for (const double r : radii) {
    const double rho_max = std::pow(r, 1.0 / dp.alpha);
    const double value =
        angular * radial_power_integral(power, rho_max, grad_sq, opts);
    report.radii.push_back(r);
    report.values.push_back(value);
  }
  fit_and_summarize(report);
  return report;
}

GrowthReport moment_bound(const ExtremalSpec& spec, double q,
                          const std::vector<double>& radii,
                          const RadialQuadOptions& opts) {
  require_centered(spec);
  const DerivedParams& dp = spec.params;
  if (q < 0.0 || q > dp.n / 2.0 + 1.0)
    throw QOutOfRange("moment exponent outside [0, n/2 + 1]");
  const double angular = sphere_measure(dp.d);
  const double power = dp.alpha * dp.n - 1.0;

  auto v_pow = [&](double rho) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dp.d);
    x[0] = rho;
    return std::pow(extremal_v(spec, x), -q);
  };

  GrowthReport report;
  report.expected_exponent = dp.n - q;
  for (const double R : radii) {
    const double rho_max = std::pow(2.0 * R, 1.0 / dp.alpha);
    const double value =
        angular * radial_power_integral(power, rho_max, v_pow, opts);
    report.radii.push_back(R);
    report.values.push_back(value);
  }
  fit_and_summarize(report);
  return report;
}

}  // namespace ckn
