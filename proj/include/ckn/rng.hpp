#pragma once

// Seeded random draws on top of std::mt19937_64 with explicit bit-to-double
// mapping.  std::uniform_real_distribution is implementation-defined, so we
// avoid it: for a fixed seed the sequence below is identical on every
// conforming standard library.

#include <Eigen/Dense>

#include <cstdint>

#include <random>

namespace ckn {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1): top 53 bits of one engine draw.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive integer range.
  int uniform_int(int lo, int hi) {
    const int span = hi - lo + 1;
    int v = lo + static_cast<int>(uniform() * span);
    return v > hi ? hi : v;
  }

  // Standard normal via Box-Muller (pairs cached).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    cached_ = r * std::sin(t);
    have_cached_ = true;
    return r * std::cos(t);
  }

  // Uniform direction on S^{d-1}.
  Eigen::VectorXd unit_vector(int d) {
    Eigen::VectorXd v(d);
    double norm = 0;
    do {
      for (int i = 0; i < d; ++i) v[i] = normal();
      norm = v.norm();
    } while (norm < 1e-12);
    return v / norm;
  }

 private:
  std::mt19937_64 gen_;
  bool have_cached_ = false;
  double cached_ = 0;
};

}  // namespace ckn
