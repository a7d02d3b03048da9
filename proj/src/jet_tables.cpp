#include "ckn/jet.hpp"

#include <functional>

namespace ckn::detail {

namespace {

double binom(int n, int k) {
  double r = 1;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

int pack(const MultiIndex& idx) {
  int key = 0, stride = 1;
  for (int t = 0; t < kMaxJetDim; ++t, stride *= 4) key += idx[t] * stride;
  return key;
}

JetTables build_tables(int dim) {
  JetTables T;
  T.dim = dim;
  T.packed_to_pos.fill(-1);

  // Multi-indices in graded order, so those of degree <= k form a prefix
  // and one table serves jets of every truncation order.
  for (int deg = 0; deg <= kMaxJetOrder; ++deg) {
    MultiIndex idx{};
    std::function<void(int, int)> emit = [&](int axis, int remaining) {
      if (axis == dim - 1) {
        idx[axis] = remaining;
        T.packed_to_pos[pack(idx)] = static_cast<int>(T.mindex.size());
        T.mindex.push_back(idx);
        T.degree.push_back(deg);
        return;
      }
      for (int v = 0; v <= remaining; ++v) {
        idx[axis] = v;
        emit(axis + 1, remaining - v);
      }
      idx[axis] = 0;
    };
    emit(0, deg);
    T.size_at[deg] = static_cast<int>(T.mindex.size());
  }
  T.size_at[kMaxJetOrder + 1] = T.size_at[kMaxJetOrder];

  const int total = static_cast<int>(T.mindex.size());

  T.shift.assign(total, {-1, -1, -1, -1});
  for (int pos = 0; pos < total; ++pos) {
    for (int axis = 0; axis < dim; ++axis) {
      if (T.degree[pos] == kMaxJetOrder) continue;
      MultiIndex up = T.mindex[pos];
      ++up[axis];
      T.shift[pos][axis] = T.packed_to_pos[pack(up)];
    }
  }

  for (int axis = 0; axis < dim; ++axis) {
    MultiIndex e{};
    e[axis] = 1;
    T.first[axis] = T.packed_to_pos[pack(e)];
    for (int other = 0; other < dim; ++other) {
      MultiIndex e2{};
      ++e2[axis];
      ++e2[other];
      T.second[axis][other] = T.packed_to_pos[pack(e2)];
    }
  }

  T.axes.assign(total, {});
  for (int pos = 0; pos < total; ++pos)
    for (int axis = 0; axis < dim; ++axis)
      for (int rep = 0; rep < T.mindex[pos][axis]; ++rep)
        T.axes[pos].push_back(axis);

  // Leibniz splittings I = J + (I - J) with weight prod binom(I_t, J_t).
  T.leibniz.assign(total, {});
  for (int pos = 0; pos < total; ++pos) {
    const MultiIndex& I = T.mindex[pos];
    MultiIndex J{};
    std::function<void(int, double)> split = [&](int axis, double weight) {
      if (axis == kMaxJetDim) {
        MultiIndex R;
        for (int t = 0; t < kMaxJetDim; ++t) R[t] = I[t] - J[t];
        T.leibniz[pos].push_back(
            {T.packed_to_pos[pack(J)], T.packed_to_pos[pack(R)], weight});
        return;
      }
      for (int v = 0; v <= I[axis]; ++v) {
        J[axis] = v;
        split(axis + 1, weight * binom(I[axis], v));
      }
      J[axis] = 0;
    };
    split(0, 1.0);
  }

  return T;
}

}  // namespace

const JetTables& jet_tables(int dim) {
  static const JetTables t2 = build_tables(2);
  static const JetTables t3 = build_tables(3);
  static const JetTables t4 = build_tables(4);
  switch (dim) {
    case 2:
      return t2;
    case 3:
      return t3;
    case 4:
      return t4;
    default:
      throw OrderMismatch("jet dimension must be 2, 3, or 4");
  }
}

}  // namespace ckn::detail
