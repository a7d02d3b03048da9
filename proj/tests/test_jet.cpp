#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "ckn/errors.hpp"
#include "ckn/fields.hpp"
#include "ckn/jet.hpp"

#include "fd_oracle.hpp"

namespace {

ckn::Jetd radial_norm_jet(const Eigen::VectorXd& x, int order) {
  const int d = static_cast<int>(x.size());
  ckn::Jetd r2 = ckn::Jetd::constant(d, order, 0.0);
  for (int i = 0; i < d; ++i) {
    const ckn::Jetd xi = ckn::Jetd::coordinate(d, order, i, x[i]);
    r2 = r2 + xi * xi;
  }
  return ckn::pow(r2, 0.5);
}

}  // namespace

TEST_SUITE("jet") {

TEST_CASE("radial norm jet at a frozen planar point") {
  // f(x, y) = sqrt(x^2 + y^2) at (1, 0): every third-order partial is known
  // in closed form, so the whole coefficient vector is pinned.
  const ckn::Jetd r = radial_norm_jet(Eigen::Vector2d(1.0, 0.0), 3);
  CHECK(r.value() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.d(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(r.d(1)) <= 1e-14);
  CHECK(std::abs(r.d(0, 0)) <= 1e-14);
  CHECK(r.d(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(r.d(0, 1)) <= 1e-14);
  CHECK(std::abs(r.d(0, 0, 0)) <= 1e-13);
  CHECK(r.d(0, 1, 1) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(std::abs(r.d(1, 1, 1)) <= 1e-13);
  CHECK(std::abs(r.d(0, 0, 1)) <= 1e-13);
}

TEST_CASE("algebraic identities close under jet arithmetic") {
  const ckn::TestField field = ckn::make_random_mix(3, 11);
  const auto pts = ckn::sample_annulus(3, 10, 17);
  for (const auto& x : pts) {
    const ckn::Jetd f = ckn::eval_jet(field, x, 3);

    const ckn::Jetd unit = f * ckn::reciprocal(f);
    CHECK(unit.value() == doctest::Approx(1.0).epsilon(1e-13));
    for (int pos = 1; pos < unit.size(); ++pos)
      CHECK(std::abs(unit[pos]) <= 1e-12);

    const ckn::Jetd back = ckn::exp(ckn::log(f));
    const ckn::Jetd cube = ckn::pow(f, 3.0);
    const ckn::Jetd cube_direct = f * f * f;
    for (int pos = 0; pos < f.size(); ++pos) {
      CHECK(back[pos] ==
            doctest::Approx(f[pos]).epsilon(1e-12).scale(1.0));
      CHECK(cube[pos] ==
            doctest::Approx(cube_direct[pos]).epsilon(1e-12).scale(1.0));
    }

    const ckn::Jetd inv = ckn::pow(f, -1.0);
    const ckn::Jetd inv_direct = ckn::reciprocal(f);
    for (int pos = 0; pos < f.size(); ++pos)
      CHECK(inv[pos] ==
            doctest::Approx(inv_direct[pos]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("jets agree with the finite-difference oracle") {
  // 200 points spread over dimensions 2 and 3 and four field kinds; every
  // partial up to order 3 is compared against nested centered stencils.
  double worst = 0;
  for (int d : {2, 3}) {
    std::vector<ckn::TestField> fields;
    fields.push_back(ckn::make_random_mix(d, 11));
    fields.push_back(ckn::make_gaussian_bump(Eigen::VectorXd::Zero(d), 1.1,
                                             0.5));
    fields.push_back(ckn::make_radial_power(d, 1.7));
    fields.push_back(ckn::make_rigidity_field(d, 0.7, 0.9, 1.3));
    const testutil::ScalarField call_field[] = {
        [&](const Eigen::VectorXd& y) { return ckn::eval(fields[0], y); },
        [&](const Eigen::VectorXd& y) { return ckn::eval(fields[1], y); },
        [&](const Eigen::VectorXd& y) { return ckn::eval(fields[2], y); },
        [&](const Eigen::VectorXd& y) { return ckn::eval(fields[3], y); }};

    const auto pts = ckn::sample_annulus(d, 25, 1000 + d);
    for (std::size_t fi = 0; fi < fields.size(); ++fi) {
      for (const auto& x : pts) {
        // Radial and rigidity kinds have unbounded high derivatives toward
        // the inner annulus edge; keep the stencil footprint where the
        // fourth-order truncation stays below tolerance.
        if (fi >= 2 && x.norm() < 0.6) continue;
        const ckn::Jetd jet = ckn::eval_jet(fields[fi], x, 3);
        for (int i = 0; i < d; ++i)
          for (int j = i; j < d; ++j)
            for (int k = j; k <= d; ++k) {
              std::vector<int> axes;
              axes.push_back(i);
              axes.push_back(j);
              if (k < d) axes.push_back(k);  // k == d marks order 2
              const double fd = testutil::fd_partial(
                  call_field[fi], x, axes,
                  testutil::fd_step(static_cast<int>(axes.size())));
              const double exact = axes.size() == 3
                                       ? jet.d(axes[0], axes[1], axes[2])
                                       : jet.d(axes[0], axes[1]);
              const double tol =
                  std::max(1e-6, 1e-6 * std::abs(exact));
              const double dev = std::abs(fd - exact);
              worst = std::max(worst, dev / std::max(1.0, std::abs(exact)));
              CHECK(dev <= tol);
            }
        for (int i = 0; i < d; ++i) {
          const double fd =
              testutil::fd_partial(call_field[fi], x, {i}, testutil::fd_step(1));
          CHECK(std::abs(fd - jet.d(i)) <=
                std::max(1e-6, 1e-6 * std::abs(jet.d(i))));
        }
      }
    }
  }
  // The whole fuzz should sit far below the asserted tolerance.
  CHECK(worst <= 1e-6);
}

TEST_CASE("partial_derivative shifts coefficients consistently") {
  const ckn::TestField field = ckn::make_random_mix(3, 23);
  const auto pts = ckn::sample_annulus(3, 5, 31);
  for (const auto& x : pts) {
    const ckn::Jetd f = ckn::eval_jet(field, x, 3);
    for (int axis = 0; axis < 3; ++axis) {
      const ckn::Jetd df = ckn::partial_derivative(f, axis);
      CHECK(df.order() == 2);
      CHECK(df.value() == doctest::Approx(f.d(axis)).epsilon(1e-15));
      for (int i = 0; i < 3; ++i) {
        CHECK(df.d(i) == doctest::Approx(f.d(axis, i)).epsilon(1e-15));
        for (int j = i; j < 3; ++j)
          CHECK(df.d(i, j) ==
                doctest::Approx(f.d(axis, i, j)).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("compose matches explicit cubing") {
  const ckn::TestField field = ckn::make_gaussian_bump(
      Eigen::Vector3d(0.2, -0.4, 0.1), 1.3, 0.7);
  const auto pts = ckn::sample_annulus(3, 5, 47);
  for (const auto& x : pts) {
    const ckn::Jetd f = ckn::eval_jet(field, x, 3);
    const double y = f.value();
    const ckn::Jetd h =
        ckn::compose(f, {y * y * y, 3 * y * y, 6 * y, 6.0});
    const ckn::Jetd direct = f * f * f;
    for (int pos = 0; pos < f.size(); ++pos)
      CHECK(h[pos] ==
            doctest::Approx(direct[pos]).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("order and domain violations throw") {
  const ckn::Jetd f = ckn::Jetd::constant(2, 3, 2.0);
  const ckn::Jetd g = ckn::Jetd::constant(2, 2, 2.0);
  CHECK_THROWS_AS((void)(f + g), ckn::OrderMismatch);
  CHECK_THROWS_AS((void)g.d(0, 0, 1), ckn::OrderMismatch);
  CHECK_THROWS_AS((void)g.truncated(3), ckn::OrderMismatch);
  CHECK_THROWS_AS(
      (void)ckn::partial_derivative(ckn::Jetd::constant(2, 0, 1.0), 0),
      ckn::OrderMismatch);

  CHECK_THROWS_AS((void)ckn::log(ckn::Jetd::constant(2, 2, -1.0)),
                  ckn::DomainError);
  CHECK_THROWS_AS((void)ckn::reciprocal(ckn::Jetd::constant(2, 2, 0.0)),
                  ckn::DomainError);
  CHECK_THROWS_AS((void)ckn::pow(ckn::Jetd::constant(2, 2, -2.0), 0.5),
                  ckn::DomainError);
  CHECK_THROWS_AS((void)ckn::pow(ckn::Jetd::constant(2, 2, 0.0), -1.0),
                  ckn::DomainError);

  // Integer powers of negative values stay well-defined.
  const ckn::Jetd sq = ckn::pow(ckn::Jetd::constant(2, 2, -2.0), 2.0);
  CHECK(sq.value() == doctest::Approx(4.0));
}

TEST_CASE("truncation keeps the low-order prefix") {
  const ckn::TestField field = ckn::make_random_mix(4, 5);
  const auto pts = ckn::sample_annulus(4, 3, 7);
  for (const auto& x : pts) {
    const ckn::Jetd f = ckn::eval_jet(field, x, 3);
    const ckn::Jetd t = f.truncated(2);
    CHECK(t.order() == 2);
    for (int pos = 0; pos < t.size(); ++pos)
      CHECK(t[pos] == f[pos]);
  }
}

}  // TEST_SUITE
