#pragma once

// Log-cylinder (Emden-Fowler) coordinates for radial profiles: with
// s = -log r the normalized radial extremal becomes an autonomous soliton
//   -phi'' + Lambda phi = phi^{p-1},   phi(s) = A cosh(k s)^{-2/(p-2)},
// with A = (p Lambda / 2)^{1/(p-2)} and k = (p-2) sqrt(Lambda) / 2.

#include <optional>
#include <vector>

#include "ckn/fields.hpp"

namespace ckn {

struct EFProfile {
  std::vector<double> s;    // uniform grid on [-S, S], n_s + 1 nodes
  std::vector<double> phi;  // positive samples
  double Lambda = 0;
  double p = 0;
};

double soliton_amplitude(double Lambda, double p);
double soliton_width(double Lambda, double p);
double soliton_value(double Lambda, double p, double s);

// Half-length 10 / k so the soliton tail is far below the peak at the ends.
double default_halfwidth(double Lambda, double p);

// phi(s) = r^{sigma} u(r) with r = e^{-s}, for a radial (origin-centered)
// profile.  n_s must be even so s = 0 lies on the grid.
EFProfile cylinder_profile(const ExtremalSpec& spec, double S, int n_s);

// Max interior residual of -phi'' + Lambda phi - phi^{p-1} using the
// fourth-order centered second-difference stencil.
double ode_residual_max(const EFProfile& profile);

struct SolitonMatchReport {
  double shift = 0;      // best translation s0
  double amplitude = 0;  // amplitude recovered from the fit
  double sup_error = 0;  // sup |phi - soliton(. - s0)|
};

// Compares a profile against the translated closed-form soliton.  When no
// shift is supplied it is recovered by linear least squares on
// phi^{-(p-2)/2} = C1 cosh(k s) + C2 sinh(k s), which is exact for any
// translate of the soliton.
SolitonMatchReport soliton_match(const EFProfile& profile,
                                 std::optional<double> shift = {});

// Independent recovery of the soliton: shoot from (phi(0), 0), bisecting
// phi(0) on the decay dichotomy (energy argument), then reflect evenly.
EFProfile bvp_recover(double Lambda, double p, double S, int n_s);

}  // namespace ckn
