#pragma once

// Truncated Taylor jets: a scalar value together with every raw partial
// derivative up to a truncation order k <= 3, over dimension d in {2,3,4}.
// Arithmetic propagates derivatives exactly (Leibniz for products, chain
// rule for univariate compositions), so jets of closed-form fields deliver
// machine-accurate gradients, Hessians and third partials.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <vector>

#include "ckn/errors.hpp"

namespace ckn {

inline constexpr int kMaxJetDim = 4;
inline constexpr int kMaxJetOrder = 3;
// Largest coefficient count: C(4 + 3, 3) multi-indices for d = 4, k = 3.
inline constexpr int kMaxJetSize = 35;

namespace detail {

// Per-axis derivative counts (i_1, ..., i_d), padded with zeros past d.
using MultiIndex = std::array<int, kMaxJetDim>;

// Lookup tables for one dimension: the multi-index list in graded order
// (so indices of degree <= k always occupy a prefix), position lookups,
// Leibniz splittings and chain-rule axis expansions.
struct JetTables {
  int dim = 0;
  std::vector<MultiIndex> mindex;
  std::vector<int> degree;
  std::array<int, kMaxJetOrder + 2> size_at{};  // #{I : |I| <= k}

  // shift[pos][axis]: position of I + e_axis (-1 beyond max order).
  std::vector<std::array<int, kMaxJetDim>> shift;
  // position of e_axis and of e_a + e_b.
  std::array<int, kMaxJetDim> first{};
  std::array<std::array<int, kMaxJetDim>, kMaxJetDim> second{};
  // axes[pos]: multi-index expanded to a list of axes, e.g. (2,1) -> {0,0,1}.
  std::vector<std::vector<int>> axes;

  struct LeibnizTerm {
    int left, right;
    double weight;
  };
  std::vector<std::vector<LeibnizTerm>> leibniz;

  int position(const MultiIndex& idx) const {
    int key = 0, stride = 1;
    for (int t = 0; t < kMaxJetDim; ++t, stride *= 4) key += idx[t] * stride;
    return packed_to_pos[key];
  }

  std::array<int, 256> packed_to_pos{};
};

const JetTables& jet_tables(int dim);

}  // namespace detail

template <class Scalar>
class Jet {
 public:
  // Stack-allocated coefficient storage (at most kMaxJetSize entries).
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, kMaxJetSize, 1>;

  Jet() = default;

  static Jet constant(int dim, int order, Scalar value) {
    Jet j(dim, order);
    j.c_.setZero();
    j.c_[0] = value;
    return j;
  }

  // Jet of the coordinate function x -> x_axis evaluated where it equals
  // `value`: unit first partial along `axis`, all higher partials zero.
  static Jet coordinate(int dim, int order, int axis, Scalar value) {
    Jet j = constant(dim, order, value);
    if (order >= 1) j.c_[detail::jet_tables(dim).first[axis]] = Scalar(1);
    return j;
  }

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(c_.size()); }
  Scalar value() const { return c_[0]; }

  Scalar operator[](int pos) const { return c_[pos]; }
  Scalar& operator[](int pos) { return c_[pos]; }
  const Coeffs& coeffs() const { return c_; }

  // Raw partials by axis list: d(i) = df/dx_i, d(i,j) = d2f/dx_i dx_j, ...
  Scalar d(int i) const { return fetch({i}); }
  Scalar d(int i, int j) const { return fetch({i, j}); }
  Scalar d(int i, int j, int k) const { return fetch({i, j, k}); }

  Jet truncated(int order) const {
    if (order > order_)
      throw OrderMismatch("cannot extend a jet to higher order");
    Jet j(dim_, order);
    j.c_ = c_.head(j.size());
    return j;
  }

 private:
  Jet(int dim, int order) : dim_(dim), order_(order) {
    c_.resize(detail::jet_tables(dim).size_at[order]);
  }

  Scalar fetch(std::initializer_list<int> axes) const {
    detail::MultiIndex idx{};
    for (int a : axes) ++idx[a];
    if (static_cast<int>(axes.size()) > order_)
      throw OrderMismatch("partial degree exceeds jet order");
    return c_[detail::jet_tables(dim_).position(idx)];
  }

  template <class S>
  friend Jet<S> make_jet_like(const Jet<S>&);

  int dim_ = 0;
  int order_ = -1;
  Coeffs c_;
};

using Jetd = Jet<double>;

template <class Scalar>
Jet<Scalar> make_jet_like(const Jet<Scalar>& a) {
  return Jet<Scalar>(a.dim(), a.order());
}

namespace detail {

template <class Scalar>
void check_same_shape(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  if (a.dim() != b.dim() || a.order() != b.order())
    throw OrderMismatch("jet operands disagree in dimension or order");
}

}  // namespace detail

template <class Scalar>
Jet<Scalar> operator+(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  detail::check_same_shape(a, b);
  Jet<Scalar> r = a;
  for (int i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class Scalar>
Jet<Scalar> operator-(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  detail::check_same_shape(a, b);
  Jet<Scalar> r = a;
  for (int i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class Scalar>
Jet<Scalar> operator-(const Jet<Scalar>& a) {
  Jet<Scalar> r = a;
  for (int i = 0; i < r.size(); ++i) r[i] = -a[i];
  return r;
}

template <class Scalar>
Jet<Scalar> operator*(const Jet<Scalar>& a, Scalar s) {
  Jet<Scalar> r = a;
  for (int i = 0; i < r.size(); ++i) r[i] = a[i] * s;
  return r;
}

template <class Scalar>
Jet<Scalar> operator*(Scalar s, const Jet<Scalar>& a) {
  return a * s;
}

template <class Scalar>
Jet<Scalar> operator+(const Jet<Scalar>& a, Scalar s) {
  Jet<Scalar> r = a;
  r[0] = a[0] + s;
  return r;
}

template <class Scalar>
Jet<Scalar> operator+(Scalar s, const Jet<Scalar>& a) {
  return a + s;
}

template <class Scalar>
Jet<Scalar> operator-(const Jet<Scalar>& a, Scalar s) {
  return a + (-s);
}

template <class Scalar>
Jet<Scalar> operator-(Scalar s, const Jet<Scalar>& a) {
  return (-a) + s;
}

// Product via the general Leibniz rule on raw partials:
// d^I(fg) = sum_{J <= I} binom(I, J) d^J f d^{I-J} g.
template <class Scalar>
Jet<Scalar> operator*(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  detail::check_same_shape(a, b);
  const auto& tables = detail::jet_tables(a.dim());
  Jet<Scalar> r = a;
  for (int pos = 0; pos < r.size(); ++pos) {
    Scalar acc(0);
    for (const auto& term : tables.leibniz[pos])
      acc += Scalar(term.weight) * a[term.left] * b[term.right];
    r[pos] = acc;
  }
  return r;
}

// Chain rule for h(f) given outer derivatives h = {h(y), h'(y), h''(y),
// h'''(y)} at y = f.value().  Exact for any axis multiplicities:
//   d_a h(f)     = h' f_a
//   d_ab h(f)    = h'' f_a f_b + h' f_ab
//   d_abc h(f)   = h''' f_a f_b f_c
//                  + h'' (f_ab f_c + f_ac f_b + f_bc f_a) + h' f_abc
template <class Scalar>
Jet<Scalar> compose(const Jet<Scalar>& f, const std::array<Scalar, 4>& h) {
  const auto& tables = detail::jet_tables(f.dim());
  Jet<Scalar> r = f;
  r[0] = h[0];
  for (int pos = 1; pos < r.size(); ++pos) {
    const auto& ax = tables.axes[pos];
    if (ax.size() == 1) {
      r[pos] = h[1] * f[pos];
    } else if (ax.size() == 2) {
      const Scalar fa = f[tables.first[ax[0]]];
      const Scalar fb = f[tables.first[ax[1]]];
      r[pos] = h[2] * fa * fb + h[1] * f[pos];
    } else {
      const int a = ax[0], b = ax[1], c = ax[2];
      const Scalar fa = f[tables.first[a]];
      const Scalar fb = f[tables.first[b]];
      const Scalar fc = f[tables.first[c]];
      const Scalar fab = f[tables.second[a][b]];
      const Scalar fac = f[tables.second[a][c]];
      const Scalar fbc = f[tables.second[b][c]];
      r[pos] = h[3] * fa * fb * fc +
               h[2] * (fab * fc + fac * fb + fbc * fa) + h[1] * f[pos];
    }
  }
  return r;
}

template <class Scalar>
Jet<Scalar> reciprocal(const Jet<Scalar>& f) {
  const Scalar y = f.value();
  if (y == Scalar(0)) throw DomainError("reciprocal of a jet with zero value");
  const Scalar iy = Scalar(1) / y;
  return compose(f, {iy, -iy * iy, Scalar(2) * iy * iy * iy,
                     Scalar(-6) * iy * iy * iy * iy});
}

template <class Scalar>
Jet<Scalar> pow(const Jet<Scalar>& f, Scalar r) {
  const Scalar y = f.value();
  const bool integral = (r == std::floor(r));
  if (y <= Scalar(0) && !integral)
    throw DomainError("fractional power of a non-positive jet value");
  if (y == Scalar(0) && r < Scalar(0))
    throw DomainError("negative power of a jet with zero value");
  using std::pow;
  const Scalar h0 = pow(y, r);
  const Scalar h1 = r * pow(y, r - 1);
  const Scalar h2 = r * (r - 1) * pow(y, r - 2);
  const Scalar h3 = r * (r - 1) * (r - 2) * pow(y, r - 3);
  return compose(f, {h0, h1, h2, h3});
}

template <class Scalar>
Jet<Scalar> log(const Jet<Scalar>& f) {
  const Scalar y = f.value();
  if (y <= Scalar(0)) throw DomainError("log of a non-positive jet value");
  const Scalar iy = Scalar(1) / y;
  return compose(f, {std::log(y), iy, -iy * iy, Scalar(2) * iy * iy * iy});
}

template <class Scalar>
Jet<Scalar> exp(const Jet<Scalar>& f) {
  const Scalar e = std::exp(f.value());
  return compose(f, {e, e, e, e});
}

// Jet of d_axis f of one order lower, by shifting multi-indices.
template <class Scalar>
Jet<Scalar> partial_derivative(const Jet<Scalar>& f, int axis) {
  if (f.order() < 1)
    throw OrderMismatch("cannot differentiate an order-0 jet");
  const auto& tables = detail::jet_tables(f.dim());
  Jet<Scalar> r = f.truncated(f.order() - 1);
  for (int pos = 0; pos < r.size(); ++pos)
    r[pos] = f[tables.shift[pos][axis]];
  return r;
}

}  // namespace ckn
