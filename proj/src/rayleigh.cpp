#include "ckn/rayleigh.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ckn/emden_fowler.hpp"
#include "ckn/errors.hpp"
#include "ckn/rng.hpp"

namespace ckn {

double CylinderGrid::h_omega() const { return 2.0 * M_PI / n_omega; }

namespace {

Eigen::VectorXd s_weights(const CylinderGrid& grid) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(grid.n_s, grid.h_s());
  w[0] *= 0.5;
  w[grid.n_s - 1] *= 0.5;
  return w;
}

// phi_{i,j+1} - phi_{i,j} with periodic wrap in the angular index.
Eigen::MatrixXd omega_diff(const Eigen::MatrixXd& phi) {
  const int nw = static_cast<int>(phi.cols());
  Eigen::MatrixXd d(phi.rows(), nw);
  d.leftCols(nw - 1) = phi.rightCols(nw - 1) - phi.leftCols(nw - 1);
  d.col(nw - 1) = phi.col(0) - phi.col(nw - 1);
  return d;
}

struct EnergyParts {
  double gradient = 0;  // both difference terms
  double mass = 0;      // int phi^2
  double pnorm = 0;     // int phi^p
  double energy(double Lambda) const { return gradient + Lambda * mass; }
};

EnergyParts energy_parts(const CylinderGrid& grid, const Eigen::MatrixXd& phi,
                         double p, const Eigen::VectorXd& w) {
  const double hs = grid.h_s(), hw = grid.h_omega();
  EnergyParts parts;
  const Eigen::MatrixXd ds =
      phi.bottomRows(grid.n_s - 1) - phi.topRows(grid.n_s - 1);
  const Eigen::MatrixXd dw = omega_diff(phi);
  parts.gradient = (hw / hs) * ds.squaredNorm() +
                   dw.array().square().matrix().rowwise().sum().dot(w) / hw;
  parts.mass = hw * phi.array().square().matrix().rowwise().sum().dot(w);
  parts.pnorm = hw * phi.array().pow(p).matrix().rowwise().sum().dot(w);
  return parts;
}

// Normalize to unit p-mass; throws if the field carries none.
void normalize_pmass(const CylinderGrid& grid, Eigen::MatrixXd& phi, double p,
                     const Eigen::VectorXd& w) {
  const double pn =
      grid.h_omega() * phi.array().pow(p).matrix().rowwise().sum().dot(w);
  if (!(pn > 0)) throw ZeroField("field has no positive p-mass");
  phi /= std::pow(pn, 1.0 / p);
}

void project_radial(Eigen::MatrixXd& phi) {
  const Eigen::VectorXd mean = phi.rowwise().mean();
  phi = mean.replicate(1, phi.cols());
}

// Gradient of Q = E / pnorm^{2/p} at a unit-p-mass field.
Eigen::MatrixXd quotient_gradient(const CylinderGrid& grid,
                                  const Eigen::MatrixXd& phi, double Lambda,
                                  double p, const Eigen::VectorXd& w,
                                  double energy) {
  const int ns = grid.n_s;
  const double hs = grid.h_s(), hw = grid.h_omega();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(ns, phi.cols());

  const Eigen::MatrixXd ds = phi.bottomRows(ns - 1) - phi.topRows(ns - 1);
  g.topRows(ns - 1) -= (2.0 * hw / hs) * ds;
  g.bottomRows(ns - 1) += (2.0 * hw / hs) * ds;

  const Eigen::MatrixXd dw_w = w.asDiagonal() * omega_diff(phi);
  const int nw = static_cast<int>(phi.cols());
  g.leftCols(nw - 1) -= (2.0 / hw) * dw_w.leftCols(nw - 1);
  g.rightCols(nw - 1) += (2.0 / hw) * dw_w.leftCols(nw - 1);
  g.col(nw - 1) -= (2.0 / hw) * dw_w.col(nw - 1);
  g.col(0) += (2.0 / hw) * dw_w.col(nw - 1);

  g += (2.0 * Lambda * hw) * (w.asDiagonal() * phi);

  const Eigen::MatrixXd grad_pnorm =
      (p * hw) * (w.asDiagonal() * phi.array().pow(p - 1.0).matrix());
  g -= (2.0 * energy / p) * grad_pnorm;
  return g;
}

}  // namespace

double rayleigh_quotient(const CylinderGrid& grid, const Eigen::MatrixXd& phi,
                         double Lambda, double p) {
  if ((phi.array() < 0).any())
    throw ZeroField("quotient is evaluated on nonnegative fields only");
  const Eigen::VectorXd w = s_weights(grid);
  const EnergyParts parts = energy_parts(grid, phi, p, w);
  if (!(parts.pnorm > 0)) throw ZeroField("field has no positive p-mass");
  return parts.energy(Lambda) / std::pow(parts.pnorm, 2.0 / p);
}

MinimizeResult minimize_quotient(const CylinderGrid& grid, double Lambda,
                                 double p, bool radial,
                                 const MinimizeOptions& opts) {
  if (!(Lambda > 0) || !(p > 2))
    throw DomainError("minimizer needs Lambda > 0 and p > 2");
  const Eigen::VectorXd w = s_weights(grid);
  const double hw = grid.h_omega();
  Rng rng(opts.seed);

  // Seed field: the radial soliton, optionally modulated and perturbed.
  Eigen::MatrixXd phi(grid.n_s, grid.n_omega);
  for (int i = 0; i < grid.n_s; ++i) {
    const double s = -grid.S + i * grid.h_s();
    const double base = soliton_value(Lambda, p, s);
    for (int j = 0; j < grid.n_omega; ++j) {
      double value = base;
      if (!radial) value *= 1.0 + opts.angular_amplitude * std::cos(j * hw);
      if (opts.noise > 0) value += opts.noise * rng.normal();
      phi(i, j) = std::max(value, 0.0);
    }
  }
  if (radial) project_radial(phi);
  normalize_pmass(grid, phi, p, w);

  double energy = energy_parts(grid, phi, p, w).energy(Lambda);
  std::vector<double> history{energy};
  double step = opts.init_step;

  MinimizeResult result;
  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    const Eigen::MatrixXd g =
        quotient_gradient(grid, phi, Lambda, p, w, energy);

    bool accepted = false;
    while (step > 1e-18) {
      Eigen::MatrixXd trial = phi - step * g;
      const int clipped = static_cast<int>((trial.array() < 0).count());
      trial = trial.cwiseMax(0.0);
      if (radial) project_radial(trial);
      const double trial_pnorm =
          hw * trial.array().pow(p).matrix().rowwise().sum().dot(w);
      if (trial_pnorm > 0) {
        trial /= std::pow(trial_pnorm, 1.0 / p);
        const double trial_energy =
            energy_parts(grid, trial, p, w).energy(Lambda);
        if (trial_energy < energy) {
          phi = trial;
          energy = trial_energy;
          result.clipped_last_iter = clipped;
          accepted = true;
          step = std::min(2.0 * step, opts.init_step);
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) {
      result.converged = true;  // no descent direction at resolvable step
      break;
    }

    // Occasionally test the angular average as a candidate; it is feasible,
    // so adopting it on strict decrease is still plain minimization.
    if (!radial && iter % 200 == 199) {
      Eigen::MatrixXd averaged = phi;
      project_radial(averaged);
      normalize_pmass(grid, averaged, p, w);
      const double avg_energy = energy_parts(grid, averaged, p, w).energy(Lambda);
      if (avg_energy < energy) {
        phi = averaged;
        energy = avg_energy;
      }
    }

    history.push_back(energy);
    const int t = static_cast<int>(history.size()) - 1;
    if (t >= opts.conv_window) {
      const double drop = history[t - opts.conv_window] - history[t];
      if (drop < opts.conv_tol * std::abs(history[t])) {
        result.converged = true;
        ++iter;
        break;
      }
    }
  }

  result.phi = phi;
  result.energy = energy;
  result.iterations = iter;
  return result;
}

EnergyReport breaking_report(const CknParams& params, const CylinderGrid& grid,
                             const MinimizeOptions& opts) {
  const DerivedParams dp = derive(params, /*require_strict=*/true);
  const RegimeReport regime = classify(dp);

  EnergyReport report;
  report.a = params.a;
  report.b = params.b;
  report.Lambda = dp.Lambda;
  report.p = dp.p;
  report.alpha = dp.alpha;
  report.alpha_fs = regime.alpha_fs;
  report.classifier_breaking = regime.fs_breaking;
  report.near_curve = std::abs(dp.alpha - regime.alpha_fs) < 0.1;

  CylinderGrid local = grid;
  if (!(local.S > 0))  // pick the half-length from the soliton decay scale
    local.S = std::clamp(10.0 / soliton_width(dp.Lambda, dp.p), 5.0, 30.0);

  const MinimizeResult radial =
      minimize_quotient(local, dp.Lambda, dp.p, /*radial=*/true, opts);
  MinimizeResult full =
      minimize_quotient(local, dp.Lambda, dp.p, /*radial=*/false, opts);
  report.energy_radial = radial.energy;
  report.iterations_radial = radial.iterations;
  report.iterations_full = full.iterations;
  report.converged = radial.converged && full.converged;

  // The radial minimizer is feasible for the free problem; keep the better.
  report.energy_full = std::min(full.energy, radial.energy);
  report.deficit =
      (report.energy_radial - report.energy_full) / report.energy_radial;
  report.numerical_breaking = report.deficit > 5e-3;
  return report;
}

std::vector<EnergyReport> breaking_scan(const std::vector<CknParams>& points,
                                        const CylinderGrid& grid,
                                        const MinimizeOptions& opts) {
  std::vector<EnergyReport> rows;
  for (const CknParams& point : points)
    rows.push_back(breaking_report(point, grid, opts));
  return rows;
}

}  // namespace ckn
