#pragma once

// Adaptive Dormand-Prince 5(4) integrator for the small (two-component)
// systems used by the profile and eigenvalue shooting routines.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

#include "ckn/errors.hpp"

namespace ckn {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 1e-3;
  double h_min = 1e-14;
  int max_steps = 2000000;
};

struct OdeResult {
  double t = 0;
  Eigen::Vector2d y = Eigen::Vector2d::Zero();
  bool stopped = false;  // a stop predicate fired before reaching t1
  int steps = 0;         // accepted steps
};

using OdeRhs = std::function<Eigen::Vector2d(double, const Eigen::Vector2d&)>;
using OdeStop = std::function<bool(double, const Eigen::Vector2d&)>;

// Integrates y' = f(t, y) from t0 to t1 (t1 > t0).  If `stop` is supplied the
// integration halts after the first accepted step at which it returns true.
inline OdeResult integrate_ode(const OdeRhs& f, double t0,
                               const Eigen::Vector2d& y0, double t1,
                               const OdeOptions& opts = {},
                               const OdeStop& stop = {}) {
  using V = Eigen::Vector2d;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                          e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640,
                          e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;

  OdeResult res;
  res.t = t0;
  res.y = y0;
  double h = std::min(opts.h_init, t1 - t0);
  V k1 = f(res.t, res.y);
  int attempts = 0;
  while (res.t < t1) {
    if (++attempts > opts.max_steps)
      throw NoConvergence("ode integrator exceeded the step budget");
    if (h < opts.h_min)
      throw NoConvergence("ode integrator step size underflow");
    h = std::min(h, t1 - res.t);

    const V k2 = f(res.t + c2 * h, res.y + h * (a21 * k1));
    const V k3 = f(res.t + c3 * h, res.y + h * (a31 * k1 + a32 * k2));
    const V k4 =
        f(res.t + c4 * h, res.y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const V k5 = f(res.t + c5 * h,
                   res.y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const V k6 =
        f(res.t + h,
          res.y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const V ynew =
        res.y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const V k7 = f(res.t + h, ynew);
    const V err_vec =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0;
    for (int i = 0; i < 2; ++i) {
      const double scale =
          opts.atol +
          opts.rtol * std::max(std::abs(res.y[i]), std::abs(ynew[i]));
      const double q = err_vec[i] / scale;
      err += q * q;
    }
    err = std::sqrt(err / 2.0);

    if (err <= 1.0) {
      res.t += h;
      res.y = ynew;
      k1 = k7;  // first-same-as-last
      ++res.steps;
      if (stop && stop(res.t, res.y)) {
        res.stopped = true;
        return res;
      }
    }
    const double factor =
        err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }
  return res;
}

}  // namespace ckn
