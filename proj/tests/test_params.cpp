#include "doctest.h"

#include <cmath>
#include <limits>

#include "ckn/errors.hpp"
#include "ckn/params.hpp"
#include "ckn/rng.hpp"

namespace {

ckn::DerivedParams derive_abd(double a, double b, int d) {
  return ckn::derive({a, b, d}, true);
}

}  // namespace

TEST_SUITE("params") {

TEST_CASE("anchor triples produce the hand-derived exponents") {
  const ckn::DerivedParams sob = derive_abd(0.0, 0.0, 3);
  CHECK(sob.a_c == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sob.p == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(sob.n == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(sob.alpha == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sob.beta == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sob.sigma == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sob.Lambda == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_FALSE(sob.kappa.has_value());

  const ckn::DerivedParams hs = derive_abd(0.0, 0.5, 3);
  CHECK(hs.p == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(hs.n == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(hs.alpha == doctest::Approx(0.25).epsilon(1e-14));

  const ckn::DerivedParams planar = derive_abd(-0.5, 0.0, 2);
  CHECK(planar.n == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(planar.alpha == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(planar.p == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(planar.Lambda == doctest::Approx(0.25).epsilon(1e-14));

  const ckn::DerivedParams deep = derive_abd(-2.0, -1.5, 2);
  CHECK(deep.n == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(deep.alpha == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(deep.p == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(deep.Lambda == doctest::Approx(4.0).epsilon(1e-14));

  const ckn::DerivedParams steep = derive_abd(-2.0, -1.9, 3);
  CHECK(steep.n == doctest::Approx(10.0 / 3.0).epsilon(1e-14));
  CHECK(steep.alpha == doctest::Approx(3.75).epsilon(1e-14));
  CHECK(steep.p == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(steep.sigma == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("derived exponents satisfy the defining relations") {
  ckn::Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = rng.uniform_int(2, 4);
    const double a_c = (d - 2) / 2.0;
    const double a = rng.uniform(-3.0, a_c - 0.05);
    const double b = a + rng.uniform(0.02, 0.95);
    const ckn::DerivedParams dp = derive_abd(a, b, d);

    CHECK(dp.n >= d - 1e-12);
    CHECK(dp.p == doctest::Approx(2 * dp.n / (dp.n - 2)).epsilon(1e-12));
    CHECK((dp.p - 2) * (dp.n - 2) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(dp.beta == doctest::Approx(2 * dp.alpha).epsilon(1e-12));
    CHECK(dp.alpha ==
          doctest::Approx(2 * dp.sigma / (dp.n - 2)).epsilon(1e-12));
    CHECK(dp.Lambda == doctest::Approx(dp.sigma * dp.sigma).epsilon(1e-14));
    CHECK(dp.p ==
          doctest::Approx(2.0 * d / (d - 2 + 2 * (b - a))).epsilon(1e-12));
    CHECK(dp.n == doctest::Approx(d / (1 + a - b)).epsilon(1e-12));
  }
}

TEST_CASE("regime classification at the anchor points") {
  const auto sob = ckn::classify(derive_abd(0.0, 0.0, 3));
  CHECK(sob.alpha_fs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(sob.fs_breaking);  // alpha sits exactly on the curve
  CHECK(sob.del_symmetric);
  CHECK(sob.cd0n);
  CHECK(sob.thm11_dimension);
  CHECK(sob.thm11_applies);

  const auto hs = ckn::classify(derive_abd(0.0, 0.5, 3));
  CHECK_FALSE(hs.fs_breaking);
  CHECK(hs.cd0n);                      // 0.0625 <= 0.25
  CHECK_FALSE(hs.thm11_dimension);     // n = 6
  CHECK_FALSE(hs.thm11_dimension_wide);
  CHECK_FALSE(hs.thm11_applies);

  const auto steep = ckn::classify(derive_abd(-2.0, -1.9, 3));
  CHECK(steep.fs_breaking);
  CHECK_FALSE(steep.del_symmetric);
  CHECK_FALSE(steep.cd0n);
  CHECK(steep.thm11_dimension);  // n = 10/3
  CHECK_FALSE(steep.thm11_applies);

  const auto deep = ckn::classify(derive_abd(-2.0, -1.5, 2));
  CHECK(deep.fs_breaking);
  CHECK(deep.alpha_fs == doctest::Approx(std::sqrt(1.0 / 3)).epsilon(1e-14));

  const auto planar = ckn::classify(derive_abd(-0.5, 0.0, 2));
  CHECK_FALSE(planar.fs_breaking);
  CHECK(planar.thm11_dimension_wide);  // n = 4
  CHECK_FALSE(planar.cd0n);            // d = 2 has a zero threshold
}

TEST_CASE("the curvature-dimension condition implies the symmetric regime") {
  // (d-2)/(n-2) <= (d-1)/(n-1) for n >= d, so cd0n forces alpha <= alpha_fs.
  ckn::Rng rng(7);
  int cd_hits = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int d = rng.uniform_int(2, 4);
    const double a_c = (d - 2) / 2.0;
    const double a = rng.uniform(-3.0, a_c - 0.05);
    const double b = a + rng.uniform(0.02, 0.95);
    const auto regime = ckn::classify(derive_abd(a, b, d));
    if (regime.cd0n) {
      ++cd_hits;
      CHECK(regime.del_symmetric);
    }
    if (d == 2) CHECK_FALSE(regime.cd0n);
  }
  CHECK(cd_hits > 20);  // the implication must actually be exercised
}

TEST_CASE("region grid covers the lattice with per-point regimes") {
  // Step 0.1 in both coordinates, so (-2, -1.9) lies exactly on the grid.
  const auto rows = ckn::region_grid(3, -3.0, 0.0, -3.0, 0.0, 31);
  REQUIRE(rows.size() == 31u * 31u);

  int admissible_count = 0;
  bool found_steep = false;
  for (const auto& row : rows) {
    if (row.regime.admissible) ++admissible_count;
    if (std::abs(row.a + 2.0) < 1e-12 && std::abs(row.b + 1.9) < 1e-12) {
      found_steep = true;
      CHECK(row.regime.admissible);
      CHECK(row.regime.fs_breaking);
    }
    if (row.b < row.a) CHECK_FALSE(row.regime.admissible);
  }
  CHECK(found_steep);
  CHECK(admissible_count > 100);
}

TEST_CASE("inadmissible and degenerate parameters throw") {
  CHECK_THROWS_AS((void)ckn::derive({0.5, 0.5, 3}), ckn::InadmissibleParams);
  CHECK_THROWS_AS((void)ckn::derive({0.0, -0.1, 3}), ckn::InadmissibleParams);
  CHECK_THROWS_AS((void)ckn::derive({0.0, 1.2, 3}), ckn::InadmissibleParams);
  CHECK_THROWS_AS((void)ckn::derive({-1.0, -1.0, 2}), ckn::InadmissibleParams);
  CHECK_THROWS_AS((void)ckn::derive({0.0, 0.5, 1}), ckn::InadmissibleParams);
  CHECK_THROWS_AS((void)ckn::derive({0.0, 1.0, 3}, true),
                  ckn::DegenerateExponent);

  // Without the strict flag the endpoint b = 1 + a is allowed: p collapses
  // to 2 and n escapes to infinity.
  const ckn::DerivedParams edge = ckn::derive({0.0, 1.0, 3});
  CHECK(edge.p == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::isinf(edge.n));
  CHECK_FALSE(ckn::is_strict({0.0, 1.0, 3}));
  CHECK(ckn::is_admissible({0.0, 1.0, 3}));
}

}  // TEST_SUITE
