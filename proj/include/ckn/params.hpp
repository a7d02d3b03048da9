#pragma once

// Parameter algebra for the weighted Sobolev family: admissibility of the
// exponent pair (a, b) in dimension d, the derived exponents (p, alpha, n,
// beta, sigma, Lambda), and the symmetry-regime classification built from
// the dimensionless pair (alpha, n).

#include <optional>
#include <vector>

namespace ckn {

struct CknParams {
  double a = 0;
  double b = 0;
  int d = 3;
};

// All quantities determined by (a, b, d).  `n` is the intrinsic dimension
// of the weighted problem (n >= d, real), `alpha` the radial deformation
// exponent, `sigma = a_c - a`, `Lambda = sigma^2` the cylinder potential,
// and `beta = 2 alpha` the profile exponent.  `kappa` is the measured
// source constant of a concrete profile; derivation leaves it unset.
struct DerivedParams {
  double a = 0, b = 0;
  int d = 3;
  double a_c = 0;
  double p = 0;
  double alpha = 0;
  double n = 0;
  double beta = 0;
  double sigma = 0;
  double Lambda = 0;
  std::optional<double> kappa;
};

struct RegimeReport {
  bool admissible = false;
  bool strict = false;
  bool fs_breaking = false;    // alpha above the spectral-stability threshold
  bool del_symmetric = false;  // complement: radial minimizers are stable
  bool cd0n = false;           // curvature-dimension condition CD(0, n)
  bool thm11_dimension = false;       // 5/2 < n <= 5
  bool thm11_dimension_wide = false;  // looser window 3/2 < n <= 5
  bool thm11_applies = false;         // cd0n && thm11_dimension
  double alpha_fs = 0;         // sqrt((d-1)/(n-1))
  double cd0n_threshold = 0;   // sqrt((d-2)/(n-2))
};

// a < a_c = (d-2)/2 and a <= b <= 1+a (strict inequality a < b when d = 2).
bool is_admissible(const CknParams& params);

// Admissible with b < 1 + a, so that p > 2.
bool is_strict(const CknParams& params);

// Derives all exponents.  Throws InadmissibleParams for parameters outside
// the admissible set, and DegenerateExponent when `require_strict` is set
// and b = 1 + a (p collapses to 2).
DerivedParams derive(const CknParams& params, bool require_strict = false);

// Classification reads only scale-free derived quantities (alpha, n, d).
RegimeReport classify(const DerivedParams& derived);

struct RegionRow {
  double a = 0, b = 0;
  RegimeReport regime;
};

// Uniform (a, b) lattice scan; inadmissible points carry a default report
// with admissible = false.
std::vector<RegionRow> region_grid(int d, double a_min, double a_max,
                                   double b_min, double b_max, int resolution);

}  // namespace ckn
