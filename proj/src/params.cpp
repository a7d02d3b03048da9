#include "ckn/params.hpp"

#include <cmath>

#include "ckn/errors.hpp"

namespace ckn {

namespace {

double critical_exponent(int d) { return (d - 2) / 2.0; }

}  // namespace

bool is_admissible(const CknParams& params) {
  if (params.d < 2) return false;
  const double a_c = critical_exponent(params.d);
  if (!(params.a < a_c)) return false;
  if (params.d == 2) {
    return params.a < params.b && params.b <= 1 + params.a;
  }
  return params.a <= params.b && params.b <= 1 + params.a;
}

bool is_strict(const CknParams& params) {
  return is_admissible(params) && params.b < 1 + params.a;
}

DerivedParams derive(const CknParams& params, bool require_strict) {
  if (!is_admissible(params))
    throw InadmissibleParams("parameter triple outside the admissible set");
  if (require_strict && !(params.b < 1 + params.a))
    throw DegenerateExponent("b = 1 + a collapses the exponent to p = 2");

  DerivedParams out;
  out.a = params.a;
  out.b = params.b;
  out.d = params.d;
  out.a_c = critical_exponent(params.d);
  out.sigma = out.a_c - params.a;
  out.Lambda = out.sigma * out.sigma;
  out.p = 2.0 * params.d / (params.d - 2 + 2 * (params.b - params.a));
  out.n = params.d / (1 + params.a - params.b);
  out.alpha =
      (1 + params.a - params.b) * out.sigma / (out.sigma + params.b);
  out.beta = (out.p - 2) * out.sigma;
  return out;
}

RegimeReport classify(const DerivedParams& derived) {
  RegimeReport r;
  r.admissible = true;
  r.strict = std::isfinite(derived.n);
  r.alpha_fs = std::sqrt((derived.d - 1) / (derived.n - 1));
  r.cd0n_threshold = std::sqrt((derived.d - 2) / (derived.n - 2));
  r.fs_breaking = derived.alpha > r.alpha_fs;
  r.del_symmetric = !r.fs_breaking;
  r.cd0n = derived.alpha * derived.alpha <=
           (derived.d - 2) / (derived.n - 2);
  r.thm11_dimension = derived.n > 2.5 && derived.n <= 5.0;
  r.thm11_dimension_wide = derived.n > 1.5 && derived.n <= 5.0;
  r.thm11_applies = r.cd0n && r.thm11_dimension;
  return r;
}

std::vector<RegionRow> region_grid(int d, double a_min, double a_max,
                                   double b_min, double b_max,
                                   int resolution) {
  std::vector<RegionRow> rows;
  rows.reserve(static_cast<size_t>(resolution) * resolution);
  for (int i = 0; i < resolution; ++i) {
    const double a =
        resolution == 1 ? a_min
                        : a_min + i * (a_max - a_min) / (resolution - 1);
    for (int j = 0; j < resolution; ++j) {
      const double b =
          resolution == 1 ? b_min
                          : b_min + j * (b_max - b_min) / (resolution - 1);
      RegionRow row;
      row.a = a;
      row.b = b;
      const CknParams params{a, b, d};
      if (is_admissible(params)) {
        row.regime = classify(derive(params));
        row.regime.strict = is_strict(params);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace ckn
