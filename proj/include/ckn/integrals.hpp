#pragma once

// Growth laws of weighted integrals over metric balls B_R^g (Euclidean
// radius R^{1/alpha}): the volume of the weighted measure e^{-f} dV_g
// grows like R^n, the profile's gradient energy like R^{n+2}, and the
// negative moments M(R) of the profile stay below C R^{n-q}.  All values
// come from 1D radial quadrature of the exact weights; the stated
// exponents are what the checks compare against.

#include <vector>

#include "ckn/cone.hpp"
#include "ckn/fields.hpp"
#include "ckn/quadrature.hpp"

namespace ckn {

// Surface measure of the unit sphere S^{d-1}.
double sphere_measure(int d);

struct GrowthReport {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> ratios;  // value / radius^{expected_exponent}
  double expected_exponent = 0;
  double fitted_exponent = 0;  // least-squares slope in log-log
  double ratio_sup = 0;
  double ratio_mean = 0;
};

// Weighted volume of B_R^g; the angular factor shrinks to the cone's
// cross-section measure when one is supplied.  Expected exponent n,
// constant |cross-section| / (alpha n).
GrowthReport volume_growth(const DerivedParams& dp,
                           const std::vector<double>& radii,
                           const ConeSpec& cone = ConeSpec::full(),
                           const RadialQuadOptions& opts = {});

// integral of e^{-f} |grad_g v|_g^2 over B_r^g along the normalized
// profile; expected exponent n + 2 (in particular o(r^2) relative to
// volume growth near r = 0).
GrowthReport gradient_energy_growth(const ExtremalSpec& spec,
                                    const std::vector<double>& radii,
                                    const RadialQuadOptions& opts = {});

// M(R) = integral of e^{-f} v^{-q} over B_{2R}^g, reported against
// R^{n-q}.  Throws QOutOfRange unless 0 <= q <= n/2 + 1.
GrowthReport moment_bound(const ExtremalSpec& spec, double q,
                          const std::vector<double>& radii,
                          const RadialQuadOptions& opts = {});

}  // namespace ckn
