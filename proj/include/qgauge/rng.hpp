#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

namespace qgauge {

// Seeded, Monte-Carlo-grade generator with cheap stream splitting. Every
// sampled quantity in the verification suites draws from a stream derived
// from (master seed, check tag, sample index), so parallel and serial runs
// see identical variates.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Collapses (seed, tag, index) into an independent stream seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag,
                              std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s) ^ (tag * 0xd1342543de82ef95ull);
  std::uint64_t b = a + index * 0x2545f4914f6cdd1dull;
  return splitmix64(b);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via the polar method (no trig, deterministic per stream).
  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  /// Uniform direction on the unit sphere of R^m.
  Eigen::VectorXd unit_vector(int m) {
    Eigen::VectorXd v(m);
    double norm = 0.0;
    do {
      for (int i = 0; i < m; ++i) v[i] = gauss();
      norm = v.norm();
    } while (norm < 1e-8);
    return v / norm;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace qgauge
