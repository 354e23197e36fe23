#pragma once

// Seeded generators for the samplers used by checkers and the harness.
// Draws are made with a fixed 64-bit engine and explicit rejection so that a
// seed reproduces the same stream on every platform.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ordlab/allocation.hpp"
#include "ordlab/rational.hpp"

namespace ordlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  long between(long lo, long hi);
  bool coin() { return (next() >> 63) != 0; }

  /// p/q with q uniform in [2, max_den] and p uniform in [1, q - 1].
  Rational unit_open(long max_den);
  std::vector<std::size_t> permutation(std::size_t n);

  /// A child stream drawn from this one.
  Rng fork(std::uint64_t salt);
  /// Stream number `index` of `seed`, independent of any other draws; lets
  /// parallel tasks sample reproducibly regardless of scheduling.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

 private:
  std::mt19937_64 engine_;
};

/// Uniform composition of `granularity` units into m parts (zeros allowed).
Lottery random_lottery(Rng& rng, std::size_t m, long granularity);

/// Convex combination of `terms` random permutation matrices with weights of
/// denominator `granularity`.
Allocation random_bistochastic(Rng& rng, std::size_t n, std::size_t terms, long granularity);

/// Half the time a grid value, otherwise a fresh rational in (0, 1).
Rational random_mu(Rng& rng, std::span<const Rational> grid, long max_den = 64);

/// s * u + t for a random positive s and any t: effectively the same as u.
BernoulliUtility random_affine(Rng& rng, const BernoulliUtility& u);

}  // namespace ordlab
