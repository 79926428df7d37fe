#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "heintze/spectral_basis.hpp"

namespace heintze {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed of the `counter`-th child stream of `root`. Children are independent of
/// how many siblings exist, so adding a stream never perturbs the others.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t counter) {
  return mix64(root ^ mix64(counter + 1));
}

/// Deterministic generator. Floating-point draws are built from raw 64-bit
/// output so they do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  /// Standard normal (Box-Muller).
  double normal() {
    double u = unit();
    while (u <= 0.0) u = unit();
    const double v = unit();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  }

  /// Dyadic rational k / 1024 in [-radius, radius]; sums of a few of these are exact.
  double dyadic(double radius) {
    const int bound = static_cast<int>(radius * 1024.0);
    return static_cast<double>(integer(-bound, bound)) / 1024.0;
  }

 private:
  std::mt19937_64 engine_;
};

/// Base points uniform in [-radius, radius]^n.
struct Sampler {
  double radius = 10.0;
  std::uint64_t seed = 0;

  Rng trial_rng(std::uint64_t trial) const { return Rng(derive_seed(seed, trial)); }
};

inline BoundaryPoint uniform_point(Rng& rng, int n, double radius) {
  BoundaryPoint p(n);
  for (int i = 0; i < n; ++i) p(i) = rng.uniform(-radius, radius);
  return p;
}

/// Uniform direction on the Euclidean unit sphere of dimension `dim`.
inline Vector unit_direction(Rng& rng, int dim) {
  Vector v(dim);
  double norm = 0.0;
  while (norm < 1e-12) {
    for (int i = 0; i < dim; ++i) v(i) = rng.normal();
    norm = v.norm();
  }
  return v / norm;
}

}  // namespace heintze
