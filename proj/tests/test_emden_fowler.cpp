#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ckn/emden_fowler.hpp"
#include "ckn/errors.hpp"
#include "ckn/extremal.hpp"
#include "ckn/fields.hpp"
#include "ckn/params.hpp"
#include "ckn/rng.hpp"

namespace {

ckn::ExtremalSpec normalized_spec(double a, double b, int d,
                                  double lambda = 1.0) {
  ckn::ExtremalSpec spec;
  spec.params = ckn::derive({a, b, d}, true);
  spec.lambda = lambda;
  return ckn::normalized(spec, ckn::sample_annulus(d, 30, 123));
}

ckn::EFProfile soliton_profile(double Lambda, double p, double S, int n_s) {
  ckn::EFProfile profile;
  profile.Lambda = Lambda;
  profile.p = p;
  for (int i = 0; i <= n_s; ++i) {
    const double s = -S + 2 * S * i / n_s;
    profile.s.push_back(s);
    profile.phi.push_back(ckn::soliton_value(Lambda, p, s));
  }
  return profile;
}

}  // namespace

TEST_SUITE("emden_fowler") {

TEST_CASE("soliton closed-form constants") {
  // A = (p Lambda / 2)^{1/(p-2)}, k = (p-2) sqrt(Lambda) / 2.
  CHECK(ckn::soliton_amplitude(0.25, 6.0) ==
        doctest::Approx(std::pow(0.75, 0.25)).epsilon(1e-14));
  CHECK(ckn::soliton_width(0.25, 6.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ckn::soliton_amplitude(4.0, 4.0) ==
        doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));
  CHECK(ckn::soliton_width(4.0, 4.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ckn::soliton_value(0.25, 6.0, 0.7) ==
        doctest::Approx(std::pow(0.75, 0.25) /
                        std::sqrt(std::cosh(0.7)))
            .epsilon(1e-14));
  CHECK(ckn::default_halfwidth(0.25, 6.0) ==
        doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("log-cylinder transform realizes the soliton exactly") {
  const ckn::ExtremalSpec spec = normalized_spec(0.0, 0.0, 3);
  const ckn::EFProfile profile = ckn::cylinder_profile(spec, 10.0, 2000);
  REQUIRE(profile.s.size() == 2001);
  CHECK(profile.s.front() == doctest::Approx(-10.0).epsilon(1e-14));
  CHECK(profile.s.back() == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(profile.Lambda == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(profile.p == doctest::Approx(6.0).epsilon(1e-14));

  // phi(s) = (3/4)^{1/4} cosh(s)^{-1/2} in closed form.
  double sup = 0;
  for (std::size_t i = 0; i < profile.s.size(); ++i)
    sup = std::max(sup,
                   std::abs(profile.phi[i] -
                            std::pow(0.75, 0.25) /
                                std::sqrt(std::cosh(profile.s[i]))));
  CHECK(sup <= 1e-12);

  // Even symmetry about s = 0 for the unit dilation.
  for (std::size_t i = 0; i < profile.s.size(); ++i)
    CHECK(std::abs(profile.phi[i] -
                   profile.phi[profile.s.size() - 1 - i]) <= 1e-12);

  // The peak ties the normalized amplitude to the soliton amplitude.
  CHECK(profile.phi[1000] ==
        doctest::Approx(ckn::soliton_amplitude(0.25, 6.0)).epsilon(1e-13));
}

TEST_CASE("transformed profiles solve the autonomous equation") {
  const ckn::ExtremalSpec spec = normalized_spec(0.0, 0.0, 3);
  const ckn::EFProfile profile = ckn::cylinder_profile(spec, 10.0, 2000);
  CHECK(ckn::ode_residual_max(profile) <= 1e-8);

  const auto match = ckn::soliton_match(profile, 0.0);
  CHECK(match.sup_error <= 1e-9);

  // Fourth-order convergence of the residual stencil: halving the grid
  // multiplies the defect by about 16.
  const ckn::EFProfile half = ckn::cylinder_profile(spec, 10.0, 1000);
  const double ratio =
      ckn::ode_residual_max(half) / ckn::ode_residual_max(profile);
  CHECK(ratio > 10.0);
  CHECK(ratio < 24.0);
}

TEST_CASE("transform consistency across a random admissible sweep") {
  ckn::Rng rng(2718);
  double worst_residual = 0, worst_match = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
    const double gap = rng.uniform(0.25, 0.75);
    const double sigma = rng.uniform(0.4, 1.6);
    const double a = (d - 2) / 2.0 - sigma;
    const double b = a + gap;

    ckn::ExtremalSpec spec;
    spec.params = ckn::derive({a, b, d}, true);
    spec = ckn::normalized(spec, ckn::sample_annulus(d, 20, 99 + trial));
    const double S =
        ckn::default_halfwidth(spec.params.Lambda, spec.params.p);
    const ckn::EFProfile profile = ckn::cylinder_profile(spec, S, 2000);
    worst_residual = std::max(worst_residual, ckn::ode_residual_max(profile));
    worst_match =
        std::max(worst_match, ckn::soliton_match(profile, 0.0).sup_error);
  }
  CHECK(worst_residual <= 1e-7);
  CHECK(worst_match <= 1e-9);
}

TEST_CASE("dilation acts as translation in the log coordinate") {
  const ckn::ExtremalSpec spec = normalized_spec(0.0, 0.0, 3, 2.0);
  const ckn::EFProfile profile = ckn::cylinder_profile(spec, 10.0, 1600);

  // Direct comparison against the closed form translated by log(2).
  const double shift = std::log(2.0);
  double sup = 0;
  for (std::size_t i = 0; i < profile.s.size(); ++i)
    sup = std::max(sup, std::abs(profile.phi[i] -
                                 ckn::soliton_value(0.25, 6.0,
                                                    profile.s[i] - shift)));
  CHECK(sup <= 1e-10);

  // The least-squares matcher recovers the same translation.
  const auto match = ckn::soliton_match(profile);
  CHECK(match.shift == doctest::Approx(shift).epsilon(1e-9));
  CHECK(match.sup_error <= 1e-9);
  CHECK(match.amplitude ==
        doctest::Approx(ckn::soliton_amplitude(0.25, 6.0)).epsilon(1e-10));

  // Supplying the known shift gives the same answer.
  CHECK(ckn::soliton_match(profile, shift).sup_error <= 1e-9);
}

TEST_CASE("closed-form soliton and constant solution both annihilate the ODE") {
  // Fixed pairs on the reference window: the stencil error stays below
  // 1e-8 when the decay rate k = (p-2)sqrt(Lambda)/2 is at most 1.
  const std::pair<double, double> pairs[] = {
      {0.25, 6.0}, {0.25, 4.0}, {0.25, 3.0}, {1.0, 3.0}, {0.5, 4.0}};
  for (const auto& [Lambda, p] : pairs) {
    const ckn::EFProfile profile = soliton_profile(Lambda, p, 10.0, 2000);
    CHECK(ckn::ode_residual_max(profile) <= 1e-8);
  }

  // Steeper members on the adaptive window obey the C h^4 law; at
  // n_s = 2000 that keeps them below 1e-7.
  for (const auto& [Lambda, p] :
       {std::pair<double, double>{4.0, 4.0}, {2.25, 5.0}, {4.0, 6.0}}) {
    const double S = ckn::default_halfwidth(Lambda, p);
    const ckn::EFProfile profile = soliton_profile(Lambda, p, S, 2000);
    CHECK(ckn::ode_residual_max(profile) <= 1e-7);
  }

  // The constant solution phi = Lambda^{1/(p-2)} also solves the equation
  // but is nowhere near the soliton.
  const double Lambda = 0.25, p = 6.0;
  ckn::EFProfile flat;
  flat.Lambda = Lambda;
  flat.p = p;
  const double level = std::pow(Lambda, 1.0 / (p - 2));
  for (int i = 0; i <= 400; ++i) {
    flat.s.push_back(-10.0 + 20.0 * i / 400);
    flat.phi.push_back(level);
  }
  CHECK(ckn::ode_residual_max(flat) <= 1e-12);
  const auto match = ckn::soliton_match(flat);
  CHECK(match.sup_error > 1e-2);
}

TEST_CASE("the match rejects unusable profiles") {
  ckn::EFProfile bad;
  bad.Lambda = 0.25;
  bad.p = 6.0;
  for (int i = 0; i <= 100; ++i) {
    bad.s.push_back(-5.0 + 10.0 * i / 100);
    bad.phi.push_back(i == 50 ? -1.0 : 1.0);
  }
  CHECK_THROWS_AS((void)ckn::soliton_match(bad), ckn::NonPositiveField);
}

TEST_CASE("transform guards its preconditions") {
  ckn::ExtremalSpec off_center = normalized_spec(0.0, 0.0, 3);
  off_center.x0 = Eigen::Vector3d(0.2, 0.0, 0.0);
  CHECK_THROWS_AS((void)ckn::cylinder_profile(off_center, 10.0, 200),
                  std::invalid_argument);
  const ckn::ExtremalSpec spec = normalized_spec(0.0, 0.0, 3);
  CHECK_THROWS_AS((void)ckn::cylinder_profile(spec, 10.0, 201),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)ckn::cylinder_profile(spec, 10.0, 2),
                  std::invalid_argument);
}

TEST_CASE("shooting recovery reproduces the soliton family") {
  const std::pair<double, double> pairs[] = {
      {0.25, 6.0}, {4.0, 4.0}, {0.25, 4.0}, {1.0, 4.0}, {1.0, 3.0},
      {2.25, 5.0}, {1.0, 6.0}, {4.0, 3.0},  {0.5, 3.5}, {2.25, 3.0}};
  for (const auto& [Lambda, p] : pairs) {
    // Shooting error grows like e^{sqrt(Lambda) s}, so the recovery window
    // is capped below the transform's default half-width.
    const double S = std::min(ckn::default_halfwidth(Lambda, p),
                              14.0 / std::sqrt(Lambda));
    const ckn::EFProfile rec = ckn::bvp_recover(Lambda, p, S, 400);
    double sup = 0;
    for (std::size_t i = 0; i < rec.s.size(); ++i)
      sup = std::max(sup, std::abs(rec.phi[i] -
                                   ckn::soliton_value(Lambda, p, rec.s[i])));
    INFO("Lambda=", Lambda, " p=", p);
    CHECK(sup <= 1e-4);
  }

  // Peak-value oracles.
  const auto peak = [](double Lambda, double p, double S) {
    const ckn::EFProfile rec = ckn::bvp_recover(Lambda, p, S, 400);
    return rec.phi[rec.phi.size() / 2];
  };
  CHECK(std::abs(peak(0.25, 6.0, 10.0) - std::pow(0.75, 0.25)) <= 1e-5);
  CHECK(std::abs(peak(4.0, 4.0, 5.0) - std::sqrt(8.0)) <= 1e-4);
  CHECK(std::abs(peak(0.25, 4.0, 10.0) - std::sqrt(0.5)) <= 1e-5);
}

TEST_CASE("recovery reports failure beyond the stable window") {
  // At sqrt(Lambda) S = 60 the shooting deviation e^{+sqrt(Lambda) s}
  // swamps the soliton tail, and positivity is lost on the grid.
  CHECK_THROWS_AS((void)ckn::bvp_recover(4.0, 3.0, 30.0, 400),
                  ckn::NoDecayFound);
}

}  // TEST_SUITE
