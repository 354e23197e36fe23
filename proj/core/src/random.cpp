#include "ordlab/random.hpp"

#include <algorithm>
#include <limits>

#include "ordlab/error.hpp"

namespace ordlab {

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

long Rng::between(long lo, long hi) {
  return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Rational Rng::unit_open(long max_den) {
  const long q = between(2, std::max(2L, max_den));
  const long p = between(1, q - 1);
  return Rational(p, q);
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[below(i)]);
  return p;
}

Rng Rng::fork(std::uint64_t salt) {
  return Rng(next() ^ (salt * 0x9e3779b97f4a7c15ull));
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return Rng(z ^ (z >> 31));
}

Lottery random_lottery(Rng& rng, std::size_t m, long granularity) {
  std::vector<long> cuts(m + 1);
  cuts[0] = 0;
  cuts[m] = granularity;
  for (std::size_t k = 1; k < m; ++k) cuts[k] = rng.between(0, granularity);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> probs(m);
  for (std::size_t a = 0; a < m; ++a) probs[a] = Rational(cuts[a + 1] - cuts[a], granularity);
  // Shuffle so that mass is not biased towards any particular object order.
  for (std::size_t i = m; i > 1; --i) std::swap(probs[i - 1], probs[rng.below(i)]);
  return Lottery::make(std::move(probs));
}

Allocation random_bistochastic(Rng& rng, std::size_t n, std::size_t terms, long granularity) {
  if (terms == 0) throw Error(ErrorCode::InvalidConfig, "need at least one permutation term");
  const Lottery weights = random_lottery(rng, terms, granularity);
  AllocationBuilder builder(n);
  for (std::size_t t = 0; t < terms; ++t) {
    const auto perm = rng.permutation(n);
    if (!weights[t].is_zero()) builder.add_assignment(perm, weights[t]);
  }
  return std::move(builder).finish();
}

Rational random_mu(Rng& rng, std::span<const Rational> grid, long max_den) {
  if (!grid.empty() && rng.coin()) return grid[rng.below(grid.size())];
  return rng.unit_open(max_den);
}

BernoulliUtility random_affine(Rng& rng, const BernoulliUtility& u) {
  const Rational scale(rng.between(1, 20), rng.between(1, 7));
  const Rational shift(rng.between(-30, 30), rng.between(1, 9));
  std::vector<Rational> values;
  values.reserve(u.size());
  for (const auto& x : u.values()) values.push_back(scale * x + shift);
  return BernoulliUtility::make(std::move(values));
}

}  // namespace ordlab
