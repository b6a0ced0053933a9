#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>

namespace spraylab {

/// Deterministic sampling helper. All certificate randomness flows through
/// this class so a (seed, sample count) pair pins every draw exactly,
/// independent of the standard library's distribution internals.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (cosine branch only).
  double normal() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// Uniform draw from the unit sphere in R^q.
  Eigen::VectorXd unit_sphere(int q) {
    Eigen::VectorXd v(q);
    do {
      for (int i = 0; i < q; ++i) v[i] = normal();
    } while (v.norm() < 1e-6);
    return v / v.norm();
  }

  /// Componentwise uniform draw from the box [lo, hi]^d.
  Eigen::VectorXd box(int d, double lo, double hi) {
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v[i] = uniform(lo, hi);
    return v;
  }

private:
  std::mt19937_64 engine_;
};

constexpr std::uint64_t kDefaultSeed = 42;

}  // namespace spraylab
