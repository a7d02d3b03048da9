#include "ckn/emden_fowler.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "ckn/errors.hpp"
#include "ckn/ode.hpp"

namespace ckn {

double soliton_amplitude(double Lambda, double p) {
  return std::pow(p * Lambda / 2.0, 1.0 / (p - 2.0));
}

double soliton_width(double Lambda, double p) {
  return (p - 2.0) * std::sqrt(Lambda) / 2.0;
}

double soliton_value(double Lambda, double p, double s) {
  const double k = soliton_width(Lambda, p);
  return soliton_amplitude(Lambda, p) *
         std::pow(std::cosh(k * s), -2.0 / (p - 2.0));
}

double default_halfwidth(double Lambda, double p) {
  return 10.0 / soliton_width(Lambda, p);
}

EFProfile cylinder_profile(const ExtremalSpec& spec, double S, int n_s) {
  if (n_s < 4 || n_s % 2 != 0)
    throw std::invalid_argument("grid count must be even and at least 4");
  if (spec.x0.size() && spec.x0.norm() != 0.0)
    throw std::invalid_argument(
        "log-cylinder transform requires an origin-centered profile");
  const DerivedParams& dp = spec.params;

  EFProfile profile;
  profile.Lambda = dp.Lambda;
  profile.p = dp.p;
  const double h = 2.0 * S / n_s;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dp.d);
  for (int i = 0; i <= n_s; ++i) {
    const double s = -S + i * h;
    const double r = std::exp(-s);
    x[0] = r;
    profile.s.push_back(s);
    profile.phi.push_back(std::pow(r, dp.sigma) * extremal_u(spec, x));
  }
  return profile;
}

double ode_residual_max(const EFProfile& profile) {
  const int n = static_cast<int>(profile.s.size());
  if (n < 5) throw std::invalid_argument("profile too short for the stencil");
  const double h = profile.s[1] - profile.s[0];
  double worst = 0;
  for (int i = 2; i + 2 < n; ++i) {
    const double second =
        (-profile.phi[i - 2] + 16.0 * profile.phi[i - 1] -
         30.0 * profile.phi[i] + 16.0 * profile.phi[i + 1] -
         profile.phi[i + 2]) /
        (12.0 * h * h);
    const double residual = -second + profile.Lambda * profile.phi[i] -
                            std::pow(profile.phi[i], profile.p - 1.0);
    worst = std::max(worst, std::abs(residual));
  }
  return worst;
}

SolitonMatchReport soliton_match(const EFProfile& profile,
                                 std::optional<double> shift) {
  const double Lambda = profile.Lambda;
  const double p = profile.p;
  const double k = soliton_width(Lambda, p);
  SolitonMatchReport report;

  // phi^{-(p-2)/2} of any translated soliton is an exact linear combination
  // C1 cosh(ks) + C2 sinh(ks) with C1^2 - C2^2 = A^{-(p-2)}.
  Eigen::Matrix2d gram = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < profile.s.size(); ++i) {
    if (profile.phi[i] <= 0)
      throw NonPositiveField("profile must be positive for the soliton fit");
    const double c = std::cosh(k * profile.s[i]);
    const double sh = std::sinh(k * profile.s[i]);
    const double y = std::pow(profile.phi[i], -(p - 2.0) / 2.0);
    gram(0, 0) += c * c;
    gram(0, 1) += c * sh;
    gram(1, 1) += sh * sh;
    rhs[0] += c * y;
    rhs[1] += sh * y;
  }
  gram(1, 0) = gram(0, 1);
  const Eigen::Vector2d coef = gram.ldlt().solve(rhs);
  const double det = coef[0] * coef[0] - coef[1] * coef[1];

  if (shift) {
    report.shift = *shift;
  } else {
    if (det <= 0)
      throw NoConvergence("profile is not close to any translated soliton");
    report.shift = std::atanh(-coef[1] / coef[0]) / k;
  }
  report.amplitude =
      det > 0 ? std::pow(det, -1.0 / (p - 2.0)) : 0.0;

  double worst = 0;
  for (std::size_t i = 0; i < profile.s.size(); ++i) {
    const double model = soliton_value(Lambda, p, profile.s[i] - report.shift);
    worst = std::max(worst, std::abs(profile.phi[i] - model));
  }
  report.sup_error = worst;
  return report;
}

namespace {

enum class ShotClass { too_big, too_small, undecided };

Eigen::Vector2d soliton_rhs(double Lambda, double p,
                            const Eigen::Vector2d& y) {
  // Odd (sign-safe) extension of the power nonlinearity: trial steps may
  // momentarily probe phi < 0.
  const double phi = y[0];
  const double forcing = std::pow(std::abs(phi), p - 2.0) * phi;
  return Eigen::Vector2d(y[1], Lambda * phi - forcing);
}

ShotClass classify_shot(double Lambda, double p, double a0, double s_end) {
  auto rhs = [Lambda, p](double, const Eigen::Vector2d& y) {
    return soliton_rhs(Lambda, p, y);
  };
  auto stop = [](double, const Eigen::Vector2d& y) {
    return y[0] < -1e-12 || y[1] > 1e-12;
  };
  OdeOptions opts;
  opts.rtol = 1e-10;
  opts.atol = 1e-16;
  const OdeResult res =
      integrate_ode(rhs, 0.0, Eigen::Vector2d(a0, 0.0), s_end, opts, stop);
  if (!res.stopped) return ShotClass::undecided;
  return res.y[0] < -1e-12 ? ShotClass::too_big : ShotClass::too_small;
}

}  // namespace

EFProfile bvp_recover(double Lambda, double p, double S, int n_s) {
  if (!(Lambda > 0) || !(p > 2))
    throw DomainError("decay recovery needs Lambda > 0 and p > 2");
  if (n_s < 4 || n_s % 2 != 0)
    throw std::invalid_argument("grid count must be even and at least 4");

  const double phi_c = std::pow(Lambda, 1.0 / (p - 2.0));  // equilibrium
  const double s_end = std::max(S, 45.0 / std::sqrt(Lambda));

  // Bracket the decaying amplitude: just above the equilibrium every shot
  // turns around (too small); large amplitudes cross zero (too big).
  double lo = phi_c * 1.000001;
  if (classify_shot(Lambda, p, lo, s_end) != ShotClass::too_small)
    throw NoDecayFound("lower shooting bound does not turn around");
  double hi = std::max(2.0 * phi_c, 1.0);
  int doublings = 0;
  while (classify_shot(Lambda, p, hi, s_end) != ShotClass::too_big) {
    hi *= 2.0;
    if (++doublings > 60)
      throw NoDecayFound("no zero-crossing amplitude below the search cap");
  }

  for (int iter = 0; iter < 200 && hi - lo > 1e-14 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const ShotClass cls = classify_shot(Lambda, p, mid, s_end);
    if (cls == ShotClass::too_big)
      hi = mid;
    else if (cls == ShotClass::too_small)
      lo = mid;
    else
      break;  // indistinguishable from the soliton over [0, s_end]
  }
  const double a_star = 0.5 * (lo + hi);

  // March the resolved shot across the nonnegative half-grid, then reflect.
  EFProfile profile;
  profile.Lambda = Lambda;
  profile.p = p;
  const double h = 2.0 * S / n_s;
  const int half = n_s / 2;
  std::vector<double> right(half + 1);
  right[0] = a_star;
  auto rhs = [Lambda, p](double, const Eigen::Vector2d& y) {
    return soliton_rhs(Lambda, p, y);
  };
  OdeOptions opts;
  opts.rtol = 1e-10;
  opts.atol = 1e-16;
  Eigen::Vector2d y(a_star, 0.0);
  for (int j = 1; j <= half; ++j) {
    y = integrate_ode(rhs, (j - 1) * h, y, j * h, opts).y;
    right[j] = y[0];
    if (!(right[j] > 0))
      throw NoDecayFound("recovered profile lost positivity inside the grid");
  }
  for (int i = 0; i <= n_s; ++i) {
    profile.s.push_back(-S + i * h);
    profile.phi.push_back(right[std::abs(i - half)]);
  }
  return profile;
}

}  // namespace ckn
