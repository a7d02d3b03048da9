#include "ckn/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace ckn {

namespace {

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_rule(int points) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(points);
  if (it == cache.end())
    it = cache.emplace(points, build_rule(points)).first;
  return it->second;
}

double radial_power_integral(double power, double rho_max,
                             const std::function<double(double)>& extra,
                             const RadialQuadOptions& opts) {
  if (power <= -1.0)
    throw std::invalid_argument("radial weight must be integrable at 0");
  const double growth = power + 1.0;  // exponent of e^{growth * t}
  const double t_max = std::log(rho_max);
  const double t_min = t_max - opts.tail_drop / growth;

  const GaussRule& rule = gauss_rule(opts.nodes_per_panel);
  const int panels =
      std::max(1, static_cast<int>(std::ceil((t_max - t_min) /
                                             opts.panel_width)));
  const double width = (t_max - t_min) / panels;

  double total = 0;
  for (int p = 0; p < panels; ++p) {
    const double lo = t_min + p * width;
    double panel_sum = 0;
    for (int q = 0; q < rule.nodes.size(); ++q) {
      const double t = lo + 0.5 * width * (rule.nodes[q] + 1.0);
      const double rho = std::exp(t);
      panel_sum += rule.weights[q] * std::exp(growth * t) * extra(rho);
    }
    total += 0.5 * width * panel_sum;
  }
  return total;
}

}  // namespace ckn
