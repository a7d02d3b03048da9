// Command-line front end: every verification and scan as a subcommand with
// machine-readable JSON/CSV output and meaningful exit codes
// (0 = checks pass, 1 = a verification failed, 2 = invalid arguments).

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ckn/emden_fowler.hpp"
#include "ckn/errors.hpp"
#include "ckn/extremal.hpp"
#include "ckn/fields.hpp"
#include "ckn/geometry.hpp"
#include "ckn/identities.hpp"
#include "ckn/integrals.hpp"
#include "ckn/params.hpp"
#include "ckn/rayleigh.hpp"
#include "ckn/report.hpp"
#include "ckn/spectral.hpp"

namespace {

using ckn::Json;

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    ckn::write_text(path, text);
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

Json regime_json(const ckn::RegimeReport& r) {
  Json j;
  j["admissible"] = r.admissible;
  j["strict"] = r.strict;
  j["fs_breaking"] = r.fs_breaking;
  j["del_symmetric"] = r.del_symmetric;
  j["cd0n"] = r.cd0n;
  j["thm11_dimension"] = r.thm11_dimension;
  j["thm11_dimension_wide"] = r.thm11_dimension_wide;
  j["thm11_applies"] = r.thm11_applies;
  j["alpha_fs"] = r.alpha_fs;
  j["cd0n_threshold"] = r.cd0n_threshold;
  return j;
}

Json derived_json(const ckn::DerivedParams& dp) {
  Json j;
  j["a"] = dp.a;
  j["b"] = dp.b;
  j["d"] = dp.d;
  j["a_c"] = dp.a_c;
  j["p"] = dp.p;
  j["alpha"] = dp.alpha;
  j["n"] = dp.n;
  j["beta"] = dp.beta;
  j["sigma"] = dp.sigma;
  j["Lambda"] = dp.Lambda;
  if (dp.kappa) j["kappa"] = *dp.kappa;
  return j;
}

Json identity_json(const ckn::IdentityReport& r) {
  Json j;
  j["identity"] = r.identity;
  j["samples"] = r.samples;
  j["max_rel_residual"] = r.max_rel_residual;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

Json growth_json(const ckn::GrowthReport& r) {
  Json j;
  j["expected_exponent"] = r.expected_exponent;
  j["fitted_exponent"] = r.fitted_exponent;
  j["ratio_sup"] = r.ratio_sup;
  j["ratio_mean"] = r.ratio_mean;
  j["radii"] = r.radii;
  j["values"] = r.values;
  j["ratios"] = r.ratios;
  return j;
}

std::string growth_csv(const ckn::GrowthReport& r) {
  std::string csv = "R,value,ratio\n";
  for (std::size_t i = 0; i < r.radii.size(); ++i)
    csv += ckn::csv_join({ckn::format_double(r.radii[i]),
                          ckn::format_double(r.values[i]),
                          ckn::format_double(r.ratios[i])}) +
           "\n";
  return csv;
}

Json energy_json(const ckn::EnergyReport& r) {
  Json j;
  j["a"] = r.a;
  j["b"] = r.b;
  j["Lambda"] = r.Lambda;
  j["p"] = r.p;
  j["alpha"] = r.alpha;
  j["alpha_fs"] = r.alpha_fs;
  j["energy_radial"] = r.energy_radial;
  j["energy_full"] = r.energy_full;
  j["deficit"] = r.deficit;
  j["classifier_breaking"] = r.classifier_breaking;
  j["numerical_breaking"] = r.numerical_breaking;
  j["iterations_radial"] = r.iterations_radial;
  j["iterations_full"] = r.iterations_full;
  j["converged"] = r.converged;
  j["near_curve"] = r.near_curve;
  return j;
}

std::string energy_csv_header() {
  return "a,b,alpha,alpha_fs,classifier_breaking,deficit,numerical_breaking\n";
}

std::string energy_csv_row(const ckn::EnergyReport& r) {
  return ckn::csv_join({ckn::format_double(r.a), ckn::format_double(r.b),
                        ckn::format_double(r.alpha),
                        ckn::format_double(r.alpha_fs),
                        ckn::format_flag(r.classifier_breaking),
                        ckn::format_double(r.deficit),
                        ckn::format_flag(r.numerical_breaking)}) +
         "\n";
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(lo * std::pow(hi / lo, count > 1 ? i / (count - 1.0) : 0.0));
  return out;
}

std::vector<double> lin_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(lo + (hi - lo) * (count > 1 ? i / (count - 1.0) : 0.0));
  return out;
}

// The 20-point admissible parameter sweep used by the family verification.
std::vector<ckn::CknParams> family_sweep() {
  return {
      {0.0, 0.0, 3},    {0.0, 0.5, 3},    {-0.5, 0.0, 3},  {-1.0, -0.5, 3},
      {-2.0, -1.9, 3},  {0.25, 0.6, 3},   {-0.3, 0.2, 3},  {0.4, 0.9, 3},
      {0.0, 0.0, 4},    {0.5, 0.75, 4},   {-1.0, -0.25, 4}, {0.9, 1.2, 4},
      {-0.5, 0.0, 2},   {-2.0, -1.5, 2},  {-1.0, -0.7, 2}, {-0.25, 0.25, 2},
      {-1.5, -1.2, 3},  {0.3, 0.31, 3},   {-0.5, 0.2, 4},  {-3.0, -2.5, 2},
  };
}

// ----- section runners (shared by the subcommands and `all`) ---------------

struct Section {
  Json json;
  bool pass = true;
};

Section run_identities(const ckn::IdentitySuiteConfig& cfg) {
  Section s;
  s.json = ckn::new_report("identity_suite");
  s.json["trials"] = cfg.trials;
  s.json["seed"] = cfg.seed;
  Json reports = Json::array();
  for (const auto& r : ckn::run_identity_suite(cfg)) {
    reports.push_back(identity_json(r));
    s.pass = s.pass && r.pass;
  }
  s.json["reports"] = reports;
  s.json["pass"] = s.pass;
  return s;
}

Section run_ricci(int samples, std::uint64_t seed) {
  Section s;
  const ckn::RicciSuiteReport r = ckn::ricci_agreement_suite(samples, seed);
  s.json = ckn::new_report("ricci_agreement");
  s.json["samples"] = r.samples;
  s.json["psd_samples"] = r.psd_samples;
  s.json["max_rel_disagreement"] = r.max_rel_disagreement;
  s.json["worst_min_eigenvalue"] = r.worst_min_eigenvalue;
  s.pass = r.max_rel_disagreement <= 1e-8 && r.worst_min_eigenvalue >= -1e-12;
  s.json["pass"] = s.pass;
  return s;
}

Section run_extremal(std::uint64_t seed) {
  Section s;
  s.json = ckn::new_report("extremal_family");
  Json points = Json::array();
  int index = 0;
  for (const ckn::CknParams& params : family_sweep()) {
    const ckn::DerivedParams dp = ckn::derive(params, true);
    ckn::ExtremalSpec spec;
    spec.params = dp;
    const auto pts = ckn::sample_annulus(dp.d, 40, seed + 101 * index);

    Json entry;
    entry["a"] = dp.a;
    entry["b"] = dp.b;
    entry["d"] = dp.d;
    const ckn::KappaReport kappa = ckn::estimate_kappa(spec, pts, 1e-6);
    entry["kappa_mean"] = kappa.mean;
    entry["kappa_spread"] = kappa.spread;
    bool ok = kappa.spread <= 1e-10;

    const bool sobolev = dp.a == 0.0 && dp.b == 0.0 && dp.d == 3;
    if (sobolev) {
      entry["kappa_expected"] = 3.0;
      ok = ok && std::abs(kappa.mean - 3.0) <= 1e-11;
    }

    const ckn::ExtremalSpec unit = ckn::normalized(spec, pts);
    const ckn::PointwiseMax residual = ckn::conformal_pde_residual(unit, pts);
    entry["pde_residual"] = residual.max_abs;
    ok = ok && residual.max_abs <= 1e-9;

    const ckn::ConstancyReport pressure = ckn::check_p_constant(unit, pts);
    entry["p_expected"] = pressure.expected;
    entry["p_max_abs_dev"] = pressure.max_abs_dev;
    ok = ok && pressure.max_abs_dev <= 1e-8;

    const ckn::ScaledMax kzero = ckn::check_k_zero(unit, pts);
    entry["k_scaled_max"] = kzero.max_scaled;
    ok = ok && kzero.max_scaled <= 1e-10;

    if (sobolev) {
      const ckn::ScalingReport scaling =
          ckn::check_scaling_family(unit, {0.5, 2.0, 10.0}, pts);
      entry["scaling_max_rel_variation"] = scaling.max_rel_variation;
      ok = ok && scaling.max_rel_variation <= 1e-10;
    }

    entry["pass"] = ok;
    s.pass = s.pass && ok;
    points.push_back(entry);
    ++index;
  }
  s.json["points"] = points;
  s.json["pass"] = s.pass;
  return s;
}

Section run_neumann(std::uint64_t seed) {
  Section s;
  s.json = ckn::new_report("cone_neumann");
  Json cases = Json::array();

  auto vertex_case = [&](const ckn::ConeSpec& cone, const std::string& name,
                         double alpha_a, double alpha_b, int d) {
    const ckn::DerivedParams dp = ckn::derive({alpha_a, alpha_b, d}, true);
    ckn::ExtremalSpec spec;
    spec.params = dp;
    spec.lambda = 1.3;
    const auto boundary = ckn::sample_cone_boundary(cone, 30, seed + 7);
    const ckn::PointwiseMax flux = ckn::check_neumann(spec, cone, boundary);
    Json entry;
    entry["case"] = name;
    entry["max_normal_flux"] = flux.max_abs;
    const bool ok = flux.max_abs <= 1e-12;
    entry["pass"] = ok;
    cases.push_back(entry);
    s.pass = s.pass && ok;
  };

  vertex_case(ckn::ConeSpec::make_arc(M_PI / 3), "arc_pi_3", -0.5, 0.0, 2);
  vertex_case(ckn::ConeSpec::make_cap(M_PI / 4), "cap_pi_4", 0.0, 0.5, 3);
  vertex_case(ckn::ConeSpec::make_cap(M_PI / 2), "half_space", 0.0, 0.0, 3);

  {  // Negative control: a displaced center must leak flux.
    const ckn::ConeSpec cone = ckn::ConeSpec::make_cap(M_PI / 4);
    const ckn::DerivedParams dp = ckn::derive({0.0, 0.0, 3}, true);
    ckn::ExtremalSpec spec;
    spec.params = dp;
    spec.x0 = Eigen::Vector3d(0.5, 0.0, 0.0);
    const auto boundary = ckn::sample_cone_boundary(cone, 30, seed + 8);
    const ckn::PointwiseMax flux = ckn::check_neumann(spec, cone, boundary);
    Json entry;
    entry["case"] = "cap_pi_4_displaced_control";
    entry["max_normal_flux"] = flux.max_abs;
    const bool ok = flux.max_abs >= 1e-2;
    entry["pass"] = ok;
    cases.push_back(entry);
    s.pass = s.pass && ok;
  }

  s.json["cases"] = cases;
  s.json["pass"] = s.pass;
  return s;
}

Section run_integrals_checks(const ckn::CknParams& params) {
  Section s;
  const ckn::DerivedParams dp = ckn::derive(params, true);
  s.json = ckn::new_report("growth_integrals");
  s.json["params"] = derived_json(dp);
  ckn::ExtremalSpec spec;
  spec.params = dp;

  // Weighted volume over a decade: value / R^n must equal the cone constant.
  const std::vector<double> decade = log_spaced(1.0, 10.0, 9);
  bool ok = true;
  {
    const ckn::GrowthReport vol = ckn::volume_growth(dp, decade);
    const double expected = ckn::sphere_measure(dp.d) / (dp.alpha * dp.n);
    double worst = 0;
    for (const double ratio : vol.ratios)
      worst = std::max(worst, std::abs(ratio / expected - 1.0));
    Json j = growth_json(vol);
    j["expected_constant"] = expected;
    j["max_rel_deviation"] = worst;
    const bool vol_ok = worst <= 1e-10;
    j["pass"] = vol_ok;
    ok = ok && vol_ok;
    s.json["volume"] = j;
  }
  {
    const ckn::ConeSpec cone = ckn::ConeSpec::make_cap(M_PI / 4);
    const ckn::GrowthReport vol = ckn::volume_growth(dp, decade, cone);
    const double expected = cone.angular_measure() / (dp.alpha * dp.n);
    double worst = 0;
    for (const double ratio : vol.ratios)
      worst = std::max(worst, std::abs(ratio / expected - 1.0));
    Json j;
    j["expected_constant"] = expected;
    j["max_rel_deviation"] = worst;
    const bool cone_ok = worst <= 1e-10;
    j["pass"] = cone_ok;
    ok = ok && cone_ok;
    s.json["volume_cap"] = j;
  }

  // Small-radius gradient energy: slope n + 2 within 2 percent.
  {
    std::vector<double> radii;
    for (int k = 0; k <= 8; ++k) radii.push_back(std::pow(2.0, -k));
    const ckn::GrowthReport grad = ckn::gradient_energy_growth(spec, radii);
    Json j = growth_json(grad);
    const bool grad_ok = std::abs(grad.fitted_exponent - (dp.n + 2.0)) <=
                         0.02 * (dp.n + 2.0);
    j["pass"] = grad_ok;
    ok = ok && grad_ok;
    s.json["gradient_energy"] = j;
  }

  // Inverse-power moments: bounded multiples of R^{n-q} out to R = 10^3.
  {
    const std::vector<double> radii = log_spaced(1.0, 1000.0, 13);
    Json moments = Json::array();
    for (const double q : {0.0, 2.0, dp.n / 2.0 + 1.0}) {
      const ckn::GrowthReport m = ckn::moment_bound(spec, q, radii);
      Json j;
      j["q"] = q;
      j["ratio_sup"] = m.ratio_sup;
      j["fitted_exponent"] = m.fitted_exponent;
      const bool m_ok = std::isfinite(m.ratio_sup);
      j["pass"] = m_ok;
      ok = ok && m_ok;
      moments.push_back(j);
    }
    s.json["moments"] = moments;
  }

  s.pass = ok;
  s.json["pass"] = ok;
  return s;
}

Section run_spectra() {
  Section s;
  s.json = ckn::new_report("spectra");
  bool ok = true;

  {  // Closed form vs the FD eigensolver across 20 openings.
    double worst = 0;
    for (const double theta : lin_spaced(0.3, 5.9, 20)) {
      const double closed = ckn::arc_lambda1(theta).lambda1;
      const double fd = ckn::arc_lambda1_fd_richardson(theta, 256);
      worst = std::max(worst, std::abs(closed - fd) /
                                  std::max(1.0, std::abs(closed)));
    }
    s.json["arc_fd_max_rel_diff"] = worst;
    const bool arc_ok = worst <= 1e-8;
    s.json["arc_fd_pass"] = arc_ok;
    ok = ok && arc_ok;
  }

  {  // Hemisphere: d - 1 attained on the first angular branch.
    const ckn::EigenResult hemi = ckn::cap_lambda1(M_PI / 2);
    s.json["hemisphere_lambda1"] = hemi.lambda1;
    s.json["hemisphere_branch"] = hemi.branch;
    const bool hemi_ok =
        std::abs(hemi.lambda1 - 2.0) <= 1e-6 && hemi.branch == "first-angular";
    s.json["hemisphere_pass"] = hemi_ok;
    ok = ok && hemi_ok;
  }

  {  // Non-convex arc reference value.
    const double wide = ckn::arc_lambda1(3.0 * M_PI / 2).lambda1;
    s.json["arc_3pi_2_lambda1"] = wide;
    const bool wide_ok = std::abs(wide - 4.0 / 9.0) <= 1e-12 && wide < 1.0;
    s.json["arc_3pi_2_pass"] = wide_ok;
    ok = ok && wide_ok;
  }

  {  // Convexity thresholds over both scan families.
    bool threshold = true;
    for (const auto& row : ckn::convexity_scan(ckn::ConeSpec::Kind::arc,
                                               lin_spaced(0.3, 5.9, 15)))
      threshold = threshold && row.threshold_ok;
    for (const auto& row : ckn::convexity_scan(ckn::ConeSpec::Kind::cap,
                                               lin_spaced(0.15, 2.5, 15)))
      threshold = threshold && row.threshold_ok;
    s.json["convex_threshold_pass"] = threshold;
    ok = ok && threshold;
  }

  {  // The m=2 branch never attains the minimum.
    bool m2 = true;
    for (const double theta : {0.3, 0.8, 1.3, 1.9, 2.4}) {
      const double l0 = ckn::cap_branch_lambda1(theta, 0);
      const double l1 = ckn::cap_branch_lambda1(theta, 1);
      const double l2 = ckn::cap_branch_lambda1(theta, 2);
      m2 = m2 && l2 >= std::min(l0, l1) - 1e-6;
    }
    s.json["m2_never_wins"] = m2;
    ok = ok && m2;
  }

  s.pass = ok;
  s.json["pass"] = ok;
  return s;
}

Section run_ef(std::uint64_t seed) {
  Section s;
  s.json = ckn::new_report("emden_fowler");
  bool ok = true;

  {  // Transform of the normalized Sobolev extremal on the reference grid.
    const ckn::DerivedParams dp = ckn::derive({0.0, 0.0, 3}, true);
    ckn::ExtremalSpec spec;
    spec.params = dp;
    const auto pts = ckn::sample_annulus(3, 40, seed + 3);
    const ckn::ExtremalSpec unit = ckn::normalized(spec, pts);
    const ckn::EFProfile profile = ckn::cylinder_profile(unit, 10.0, 2000);
    const double residual = ckn::ode_residual_max(profile);
    s.json["transform_residual"] = residual;
    const bool res_ok = residual <= 1e-8;
    ok = ok && res_ok;

    const ckn::SolitonMatchReport match = ckn::soliton_match(profile, 0.0);
    s.json["soliton_sup_error"] = match.sup_error;
    const bool match_ok = match.sup_error <= 1e-9;
    s.json["transform_pass"] = res_ok && match_ok;
    ok = ok && match_ok;
  }

  {  // Independent recovery by shooting across ten parameter pairs.
    const std::vector<std::pair<double, double>> pairs = {
        {0.25, 6.0}, {4.0, 4.0},  {0.25, 4.0}, {1.0, 4.0},  {1.0, 3.0},
        {2.25, 5.0}, {1.0, 6.0},  {4.0, 3.0},  {0.5, 3.5},  {2.25, 3.0}};
    double worst = 0;
    for (const auto& [Lambda, p] : pairs) {
      // Cap the window so the e^{+sqrt(Lambda) s} shooting sensitivity stays
      // below the soliton tail at double precision.
      const double S = std::min(ckn::default_halfwidth(Lambda, p),
                                14.0 / std::sqrt(Lambda));
      const ckn::EFProfile rec = ckn::bvp_recover(Lambda, p, S, 2000);
      double sup = 0;
      for (std::size_t i = 0; i < rec.s.size(); ++i)
        sup = std::max(sup, std::abs(rec.phi[i] -
                                     ckn::soliton_value(Lambda, p, rec.s[i])));
      worst = std::max(worst, sup);
    }
    s.json["recovery_pairs"] = static_cast<int>(pairs.size());
    s.json["recovery_worst_sup"] = worst;
    const bool rec_ok = worst <= 1e-4;
    s.json["recovery_pass"] = rec_ok;
    ok = ok && rec_ok;
  }

  s.pass = ok;
  s.json["pass"] = ok;
  return s;
}

Section run_rayleigh_refs(std::uint64_t seed) {
  Section s;
  s.json = ckn::new_report("rayleigh");
  ckn::CylinderGrid grid;
  grid.S = 0;  // auto half-length from the soliton scale
  ckn::MinimizeOptions opts;
  opts.seed = seed;

  const ckn::EnergyReport symmetric =
      ckn::breaking_report({-0.5, 0.0, 2}, grid, opts);
  const ckn::EnergyReport breaking =
      ckn::breaking_report({-2.0, -1.5, 2}, grid, opts);
  s.json["symmetric_point"] = energy_json(symmetric);
  s.json["breaking_point"] = energy_json(breaking);

  const bool sym_ok = symmetric.deficit <= 1e-3 && !symmetric.numerical_breaking &&
                      symmetric.energy_full <=
                          symmetric.energy_radial + 1e-6 &&
                      symmetric.converged;
  const bool brk_ok = breaking.deficit >= 0.01 && breaking.numerical_breaking &&
                      breaking.energy_full <= breaking.energy_radial + 1e-6 &&
                      breaking.converged;
  s.json["symmetric_pass"] = sym_ok;
  s.json["breaking_pass"] = brk_ok;
  s.pass = sym_ok && brk_ok;
  s.json["pass"] = s.pass;
  return s;
}

// ----- subcommand configuration --------------------------------------------

struct CommonArgs {
  double a = 0, b = 0;
  int d = 3;
  std::uint64_t seed = 0;
  std::string out;
};

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ckn::InadmissibleParams& e) {
    std::cerr << "error: inadmissible parameters: " << e.what() << "\n";
    return 2;
  } catch (const ckn::DegenerateExponent& e) {
    std::cerr << "error: degenerate exponent: " << e.what() << "\n";
    return 2;
  } catch (const ckn::QOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ckn::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification laboratory for a weighted Sobolev "
               "extremal family"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- params ----
  auto* cmd_params = app.add_subcommand(
      "params", "Derived exponents and regime flags for one (a, b, d)");
  CommonArgs pa;
  cmd_params->add_option("--a", pa.a, "Weight exponent a")->required();
  cmd_params->add_option("--b", pa.b, "Weight exponent b")->required();
  cmd_params->add_option("--d", pa.d, "Ambient dimension")->required();
  cmd_params->add_option("--out", pa.out, "Output file (default stdout)");
  cmd_params->callback([&] {
    exit_code = guarded([&] {
      const ckn::DerivedParams dp = ckn::derive({pa.a, pa.b, pa.d});
      Json j = ckn::new_report("params");
      j["derived"] = derived_json(dp);
      j["regime"] = regime_json(ckn::classify(dp));
      emit(pa.out, render(j));
      return 0;
    });
  });

  // ---- regions ----
  auto* cmd_regions = app.add_subcommand(
      "regions", "Regime classification over an (a, b) lattice, as CSV");
  struct {
    int d = 3;
    double a_min = -3, a_max = 0.45, b_min = -3, b_max = 1.4;
    int resolution = 41;
    std::string out;
  } re;
  cmd_regions->add_option("--d", re.d, "Ambient dimension");
  cmd_regions->add_option("--a-min", re.a_min, "Lattice lower bound in a");
  cmd_regions->add_option("--a-max", re.a_max, "Lattice upper bound in a");
  cmd_regions->add_option("--b-min", re.b_min, "Lattice lower bound in b");
  cmd_regions->add_option("--b-max", re.b_max, "Lattice upper bound in b");
  cmd_regions->add_option("--resolution", re.resolution, "Points per axis");
  cmd_regions->add_option("--out", re.out, "Output file (default stdout)");
  cmd_regions->callback([&] {
    exit_code = guarded([&] {
      std::string csv =
          "a,b,admissible,strict,fs_breaking,del_symmetric,cd0n,thm11_applies\n";
      for (const auto& row : ckn::region_grid(re.d, re.a_min, re.a_max,
                                              re.b_min, re.b_max,
                                              re.resolution))
        csv += ckn::csv_join(
                   {ckn::format_double(row.a), ckn::format_double(row.b),
                    ckn::format_flag(row.regime.admissible),
                    ckn::format_flag(row.regime.strict),
                    ckn::format_flag(row.regime.fs_breaking),
                    ckn::format_flag(row.regime.del_symmetric),
                    ckn::format_flag(row.regime.cd0n),
                    ckn::format_flag(row.regime.thm11_applies)}) +
               "\n";
      emit(re.out, csv);
      return 0;
    });
  });

  // ---- verify-identities ----
  auto* cmd_ident = app.add_subcommand(
      "verify-identities", "Randomized pointwise identity suite");
  struct {
    int trials = 1000;
    std::uint64_t seed = 0;
    std::optional<int> d;
    std::optional<double> n, alpha;
    std::string out;
  } id;
  cmd_ident->add_option("--trials", id.trials, "Sample tuples");
  cmd_ident->add_option("--seed", id.seed, "Random seed");
  cmd_ident->add_option("--d", id.d, "Pin the ambient dimension");
  cmd_ident->add_option("--n", id.n, "Pin the effective dimension");
  cmd_ident->add_option("--alpha", id.alpha, "Pin the conformal exponent");
  cmd_ident->add_option("--out", id.out, "Output file (default stdout)");
  cmd_ident->callback([&] {
    exit_code = guarded([&] {
      ckn::IdentitySuiteConfig cfg;
      cfg.trials = id.trials;
      cfg.seed = id.seed;
      cfg.fixed_d = id.d;
      cfg.fixed_n = id.n;
      cfg.fixed_alpha = id.alpha;
      const Section s = run_identities(cfg);
      emit(id.out, render(s.json));
      return s.pass ? 0 : 1;
    });
  });

  // ---- verify-extremal ----
  auto* cmd_ext = app.add_subcommand(
      "verify-extremal",
      "Profile family checks: kappa, normalization, pressure, curvature");
  CommonArgs ex;
  cmd_ext->add_option("--seed", ex.seed, "Random seed");
  cmd_ext->add_option("--out", ex.out, "Output file (default stdout)");
  cmd_ext->callback([&] {
    exit_code = guarded([&] {
      const Section family = run_extremal(ex.seed);
      const Section cones = run_neumann(ex.seed);
      Json j = ckn::new_report("verify_extremal");
      j["family"] = family.json;
      j["cones"] = cones.json;
      const bool pass = family.pass && cones.pass;
      j["pass"] = pass;
      emit(ex.out, render(j));
      return pass ? 0 : 1;
    });
  });

  // ---- integrals ----
  auto* cmd_int = app.add_subcommand(
      "integrals", "Weighted volume, gradient-energy and moment growth");
  struct {
    double a = 0, b = 0;
    int d = 3;
    std::string out, csv_volume, csv_gradient, csv_moment;
  } in;
  cmd_int->add_option("--a", in.a, "Weight exponent a");
  cmd_int->add_option("--b", in.b, "Weight exponent b");
  cmd_int->add_option("--d", in.d, "Ambient dimension");
  cmd_int->add_option("--out", in.out, "JSON output file (default stdout)");
  cmd_int->add_option("--csv-volume", in.csv_volume, "Volume table CSV file");
  cmd_int->add_option("--csv-gradient", in.csv_gradient,
                      "Gradient-energy table CSV file");
  cmd_int->add_option("--csv-moment", in.csv_moment,
                      "Moment table CSV file (q = 2)");
  cmd_int->callback([&] {
    exit_code = guarded([&] {
      const Section s = run_integrals_checks({in.a, in.b, in.d});
      emit(in.out, render(s.json));
      const ckn::DerivedParams dp = ckn::derive({in.a, in.b, in.d}, true);
      ckn::ExtremalSpec spec;
      spec.params = dp;
      if (!in.csv_volume.empty())
        ckn::write_text(in.csv_volume,
                        growth_csv(ckn::volume_growth(dp, log_spaced(1, 10, 9))));
      if (!in.csv_gradient.empty()) {
        std::vector<double> radii;
        for (int k = 0; k <= 8; ++k) radii.push_back(std::pow(2.0, -k));
        ckn::write_text(in.csv_gradient,
                        growth_csv(ckn::gradient_energy_growth(spec, radii)));
      }
      if (!in.csv_moment.empty())
        ckn::write_text(
            in.csv_moment,
            growth_csv(ckn::moment_bound(spec, 2.0, log_spaced(1, 1000, 13))));
      return s.pass ? 0 : 1;
    });
  });

  // ---- spectrum ----
  auto* cmd_spec = app.add_subcommand(
      "spectrum", "Neumann cross-section eigenvalues and convexity scan");
  struct {
    std::string kind = "arc";
    std::optional<double> theta;
    double theta_min = 0, theta_max = 0;
    int n_theta = 15;
    std::string out, csv;
  } sp;
  cmd_spec->add_option("--kind", sp.kind, "arc or cap")
      ->check(CLI::IsMember({"arc", "cap"}));
  cmd_spec->add_option("--theta", sp.theta, "Single opening angle");
  cmd_spec->add_option("--theta-min", sp.theta_min, "Scan lower bound");
  cmd_spec->add_option("--theta-max", sp.theta_max, "Scan upper bound");
  cmd_spec->add_option("--n-theta", sp.n_theta, "Scan resolution");
  cmd_spec->add_option("--out", sp.out, "JSON output file (default stdout)");
  cmd_spec->add_option("--csv", sp.csv, "Scan table CSV file");
  cmd_spec->callback([&] {
    exit_code = guarded([&] {
      const bool arc = sp.kind == "arc";
      if (sp.theta) {
        const ckn::EigenResult r =
            arc ? ckn::arc_lambda1(*sp.theta) : ckn::cap_lambda1(*sp.theta);
        Json j = ckn::new_report("spectrum_point");
        j["kind"] = sp.kind;
        j["theta"] = *sp.theta;
        j["lambda1"] = r.lambda1;
        j["branch"] = r.branch;
        j["solver_info"] = r.solver_info;
        emit(sp.out, render(j));
        return 0;
      }
      double lo = sp.theta_min, hi = sp.theta_max;
      if (lo == 0 && hi == 0) {  // sensible full sweep per kind
        lo = arc ? 0.3 : 0.15;
        hi = arc ? 5.9 : 2.5;
      }
      const auto rows = ckn::convexity_scan(
          arc ? ckn::ConeSpec::Kind::arc : ckn::ConeSpec::Kind::cap,
          lin_spaced(lo, hi, sp.n_theta));
      std::string csv = "theta,lambda1,branch,convex,threshold_ok\n";
      bool pass = true;
      Json jrows = Json::array();
      for (const auto& row : rows) {
        csv += ckn::csv_join({ckn::format_double(row.theta),
                              ckn::format_double(row.lambda1), row.branch,
                              ckn::format_flag(row.convex),
                              ckn::format_flag(row.threshold_ok)}) +
               "\n";
        Json jr;
        jr["theta"] = row.theta;
        jr["lambda1"] = row.lambda1;
        jr["branch"] = row.branch;
        jr["convex"] = row.convex;
        jr["threshold_ok"] = row.threshold_ok;
        jrows.push_back(jr);
        pass = pass && row.threshold_ok;
      }
      Json j = ckn::new_report("spectrum_scan");
      j["kind"] = sp.kind;
      j["rows"] = jrows;
      j["pass"] = pass;
      if (!sp.csv.empty()) ckn::write_text(sp.csv, csv);
      if (sp.out.empty() && !sp.csv.empty())
        emit("", render(j));
      else
        emit(sp.out, sp.out.empty() ? csv : render(j));
      return pass ? 0 : 1;
    });
  });

  // ---- ef-profile ----
  auto* cmd_ef = app.add_subcommand(
      "ef-profile", "Log-cylinder profile, autonomous ODE residual, soliton");
  struct {
    double a = 0, b = 0;
    int d = 3;
    double S = 0;
    int n_s = 2000;
    bool recover = false;
    std::uint64_t seed = 0;
    std::string out, csv;
  } ef;
  cmd_ef->add_option("--a", ef.a, "Weight exponent a");
  cmd_ef->add_option("--b", ef.b, "Weight exponent b");
  cmd_ef->add_option("--d", ef.d, "Ambient dimension");
  cmd_ef->add_option("--S", ef.S, "Half-length (0 = auto)");
  cmd_ef->add_option("--n-s", ef.n_s, "Grid intervals");
  cmd_ef->add_flag("--recover", ef.recover, "Also run the shooting recovery");
  cmd_ef->add_option("--seed", ef.seed, "Seed for the normalization samples");
  cmd_ef->add_option("--out", ef.out, "JSON output file (default stdout)");
  cmd_ef->add_option("--csv", ef.csv, "Profile CSV file (s, phi)");
  cmd_ef->callback([&] {
    exit_code = guarded([&] {
      const ckn::DerivedParams dp = ckn::derive({ef.a, ef.b, ef.d}, true);
      ckn::ExtremalSpec spec;
      spec.params = dp;
      const auto pts = ckn::sample_annulus(dp.d, 40, ef.seed + 3);
      const ckn::ExtremalSpec unit = ckn::normalized(spec, pts);
      const double S =
          ef.S > 0 ? ef.S : ckn::default_halfwidth(dp.Lambda, dp.p);
      const ckn::EFProfile profile = ckn::cylinder_profile(unit, S, ef.n_s);
      const double residual = ckn::ode_residual_max(profile);
      const ckn::SolitonMatchReport match = ckn::soliton_match(profile, 0.0);

      Json j = ckn::new_report("ef_profile");
      j["params"] = derived_json(dp);
      j["S"] = S;
      j["n_s"] = ef.n_s;
      j["ode_residual"] = residual;
      j["soliton_sup_error"] = match.sup_error;
      bool pass = residual <= 1e-8 && match.sup_error <= 1e-9;

      if (ef.recover) {
        // Shooting window capped by the e^{+sqrt(Lambda) s} sensitivity.
        const double S_rec =
            std::min(S, 14.0 / std::sqrt(dp.Lambda));
        const ckn::EFProfile rec =
            ckn::bvp_recover(dp.Lambda, dp.p, S_rec, ef.n_s);
        double sup = 0;
        for (std::size_t i = 0; i < rec.s.size(); ++i)
          sup = std::max(
              sup, std::abs(rec.phi[i] - ckn::soliton_value(dp.Lambda, dp.p,
                                                             rec.s[i])));
        j["recovery_sup_diff"] = sup;
        pass = pass && sup <= 1e-4;
      }
      j["pass"] = pass;

      if (!ef.csv.empty()) {
        std::string csv = "s,phi\n";
        for (std::size_t i = 0; i < profile.s.size(); ++i)
          csv += ckn::csv_join({ckn::format_double(profile.s[i]),
                                ckn::format_double(profile.phi[i])}) +
                 "\n";
        ckn::write_text(ef.csv, csv);
      }
      emit(ef.out, render(j));
      return pass ? 0 : 1;
    });
  });

  // ---- rayleigh ----
  auto* cmd_ray = app.add_subcommand(
      "rayleigh", "Cylinder quotient minimization and breaking detection");
  struct {
    double a = 0, b = 0;
    int d = 2;
    bool scan = false;
    double S = 0;
    int n_s = 256, n_omega = 64;
    std::uint64_t seed = 0;
    int max_iters = 20000;
    std::string out, csv;
  } ra;
  cmd_ray->add_option("--a", ra.a, "Weight exponent a");
  cmd_ray->add_option("--b", ra.b, "Weight exponent b");
  cmd_ray->add_option("--d", ra.d, "Ambient dimension (2 only)");
  cmd_ray->add_flag("--scan", ra.scan, "Six-point sweep along b at a = -2");
  cmd_ray->add_option("--S", ra.S, "Half-length (0 = auto)");
  cmd_ray->add_option("--n-s", ra.n_s, "Axial nodes");
  cmd_ray->add_option("--n-omega", ra.n_omega, "Angular nodes");
  cmd_ray->add_option("--seed", ra.seed, "Random seed");
  cmd_ray->add_option("--max-iters", ra.max_iters, "Iteration budget");
  cmd_ray->add_option("--out", ra.out, "JSON output file (default stdout)");
  cmd_ray->add_option("--csv", ra.csv, "Report CSV file");
  cmd_ray->callback([&] {
    exit_code = guarded([&] {
      if (ra.d != 2)
        throw std::invalid_argument("the cylinder minimizer is d = 2 only");
      ckn::CylinderGrid grid;
      grid.S = ra.S;
      grid.n_s = ra.n_s;
      grid.n_omega = ra.n_omega;
      ckn::MinimizeOptions opts;
      opts.seed = ra.seed;
      opts.max_iters = ra.max_iters;

      std::vector<ckn::CknParams> points;
      if (ra.scan)
        for (const double b : {-1.9, -1.7, -1.5, -1.3, -1.15, -1.05})
          points.push_back({-2.0, b, 2});
      else
        points.push_back({ra.a, ra.b, ra.d});

      const auto rows = ckn::breaking_scan(points, grid, opts);
      std::string csv = energy_csv_header();
      Json jrows = Json::array();
      bool pass = true;
      for (const auto& row : rows) {
        csv += energy_csv_row(row);
        jrows.push_back(energy_json(row));
        const bool agree = row.near_curve ||
                           row.classifier_breaking == row.numerical_breaking;
        pass = pass && row.converged && agree &&
               row.energy_full <= row.energy_radial + 1e-6;
      }
      Json j = ckn::new_report(ra.scan ? "rayleigh_scan" : "rayleigh");
      j["rows"] = jrows;
      j["pass"] = pass;
      if (!ra.csv.empty()) ckn::write_text(ra.csv, csv);
      emit(ra.out, render(j));
      return pass ? 0 : 1;
    });
  });

  // ---- all ----
  auto* cmd_all = app.add_subcommand(
      "all", "Full verification suite, aggregated pass/fail");
  struct {
    std::uint64_t seed = 0;
    std::string out;
  } al;
  cmd_all->add_option("--seed", al.seed, "Random seed");
  cmd_all->add_option("--out", al.out, "Output file (default stdout)");
  cmd_all->callback([&] {
    exit_code = guarded([&] {
      Json j = ckn::new_report("all");
      j["seed"] = al.seed;
      bool pass = true;
      Json sections = Json::array();
      auto add = [&](const char* name, const Section& s) {
        Json entry;
        entry["name"] = name;
        entry["pass"] = s.pass;
        entry["report"] = s.json;
        sections.push_back(entry);
        pass = pass && s.pass;
      };
      add("identity_suite", run_identities({1000, al.seed, {}, {}, {}}));
      add("ricci_agreement", run_ricci(500, al.seed + 1));
      add("extremal_family", run_extremal(al.seed + 2));
      add("cone_neumann", run_neumann(al.seed + 3));
      add("growth_integrals", run_integrals_checks({0.0, 0.0, 3}));
      add("growth_integrals_shifted", run_integrals_checks({0.0, 0.5, 3}));
      add("spectra", run_spectra());
      add("emden_fowler", run_ef(al.seed + 4));
      add("rayleigh", run_rayleigh_refs(al.seed));
      j["sections"] = sections;
      j["pass"] = pass;
      emit(al.out, render(j));
      return pass ? 0 : 1;
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return exit_code;
}
