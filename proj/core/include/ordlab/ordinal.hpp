#pragma once

// Ordinal cones, the rate of middle substitution, canonical representatives,
// first-order stochastic dominance and the separating-utility construction
// for preferences beyond expected utility.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordlab/allocation.hpp"
#include "ordlab/rational.hpp"

namespace ordlab {

/// Strict ranking of objects, best first.
class OrdinalPreference {
 public:
  /// Throws NotAPermutation.
  static OrdinalPreference make(std::vector<ObjectId> ranking);
  /// Parses "a>b>c". Throws ParseError or NotAPermutation.
  static OrdinalPreference parse(std::string_view text);
  /// All m! rankings in lexicographic order of their rank sequence.
  static std::vector<OrdinalPreference> all(std::size_t m);

  std::size_t size() const { return ranking_.size(); }
  ObjectId at_rank(std::size_t rank) const { return ranking_[rank]; }
  ObjectId best() const { return ranking_.front(); }
  ObjectId worst() const { return ranking_.back(); }
  std::size_t rank_of(ObjectId a) const { return rank_[a.index]; }
  bool prefers(ObjectId x, ObjectId y) const { return rank_of(x) < rank_of(y); }
  const std::vector<ObjectId>& ranking() const { return ranking_; }

  std::string str() const;

  friend bool operator==(const OrdinalPreference& a, const OrdinalPreference& b) { return a.ranking_ == b.ranking_; }
  friend auto operator<=>(const OrdinalPreference& a, const OrdinalPreference& b) { return a.ranking_ <=> b.ranking_; }

 private:
  explicit OrdinalPreference(std::vector<ObjectId> ranking);
  std::vector<ObjectId> ranking_;
  std::vector<std::size_t> rank_;
};

/// Rate of middle substitution, strictly inside (0, 1).
class MiddleRate {
 public:
  /// Throws MuOutOfRange.
  static MiddleRate make(Rational mu);

  const Rational& value() const { return mu_; }
  std::string str() const { return mu_.str(); }

  friend bool operator==(const MiddleRate&, const MiddleRate&) = default;

 private:
  explicit MiddleRate(Rational mu) : mu_(std::move(mu)) {}
  Rational mu_;
};

/// Canonical representative of an effectively-same class: min 0, sum 1, no ties.
class NormalizedUtility {
 public:
  /// Validates the three invariants; throws TiesPresent or PreconditionViolated.
  static NormalizedUtility make(std::vector<Rational> values);

  std::size_t size() const { return u_.size(); }
  const Rational& operator[](std::size_t a) const { return u_[a]; }
  std::span<const Rational> values() const { return u_.values(); }
  const BernoulliUtility& as_bernoulli() const { return u_; }

  friend bool operator==(const NormalizedUtility&, const NormalizedUtility&) = default;

 private:
  explicit NormalizedUtility(BernoulliUtility u) : u_(std::move(u)) {}
  BernoulliUtility u_;
};

enum class SdVerdict { Dominates, DominatedBy, Equal, Incomparable };

std::string_view to_string(SdVerdict v);

/// A preference over lotteries: any side-effect-free evaluator. Members of
/// the extended domain must have no ties on degenerate lotteries and be
/// strictly monotone in stochastic dominance; validate_v_domain samples both.
class VUtility {
 public:
  using Evaluator = std::function<Rational(const Lottery&)>;

  VUtility(std::string name, std::size_t objects, Evaluator evaluator);
  static VUtility expected(const BernoulliUtility& u, std::string name = "eu");

  Rational operator()(const Lottery& lot) const { return evaluator_(lot); }
  /// Values on the degenerate lotteries, by object.
  std::vector<Rational> degenerate_values() const;
  /// Throws TiesPresent.
  OrdinalPreference ordinal() const;

  const std::string& name() const { return name_; }
  std::size_t objects() const { return objects_; }

 private:
  std::string name_;
  std::size_t objects_;
  Evaluator evaluator_;
};

OrdinalPreference ordinal_of(const BernoulliUtility& u);
OrdinalPreference ordinal_of(std::span<const Rational> values);

/// (u(mid) - u(worst)) / (u(best) - u(worst)) for three objects.
/// Throws WrongDimension.
MiddleRate middle_rate(const BernoulliUtility& u);

bool effectively_same(const BernoulliUtility& u, const BernoulliUtility& v);

/// Affine image with minimum 0 and sum 1.
NormalizedUtility canonicalize(const BernoulliUtility& u);

/// Canonical form of best = 1, middle = mu, worst = 0 under `order` (three objects).
NormalizedUtility utility_from(const OrdinalPreference& order, const MiddleRate& mu);

/// Strict-upper-set cumulative comparison of p against q at `order`.
SdVerdict sd_compare(const Lottery& p, const Lottery& q, const OrdinalPreference& order);

/// true when p stochastically dominates q or equals it.
bool sd_weakly_dominates(const Lottery& p, const Lottery& q, const OrdinalPreference& order);

struct SeparationParams {
  Rational delta;
  Rational delta_prime;
};

/// First object, scanning worst to best, whose strict upper set carries
/// strictly more mass under p1 than under p2. Empty when p2 weakly dominates p1.
std::optional<ObjectId> separation_threshold(const OrdinalPreference& order, const Lottery& p1, const Lottery& p2);

/// An expected-utility representative with the same ranking as `u` that
/// strictly prefers p1 to p2. With explicit parameters the construction is
/// evaluated once (ParametersTooLarge if it does not separate); without,
/// delta and delta' start at 1/2 and are halved until it does.
/// Throws PreconditionViolated when p2 weakly stochastically dominates p1.
BernoulliUtility separating_utility(const VUtility& u, const Lottery& p1, const Lottery& p2,
                                    std::optional<SeparationParams> params = std::nullopt);

struct SdWitness {
  Lottery dominant;
  Lottery dominated;
  Rational dominant_value;
  Rational dominated_value;
};

struct CandidateReport {
  std::string name;
  std::optional<std::pair<ObjectId, ObjectId>> tie;
  std::optional<SdWitness> sd_violation;
  std::size_t sd_pairs_checked = 0;

  bool passed() const { return !tie && !sd_violation; }
};

struct ValidationReport {
  std::vector<CandidateReport> candidates;

  bool passed() const;
};

/// Checks no ties on degenerate lotteries (exhaustively) and strict
/// sd-monotonicity on `sample_count` random strictly sd-ordered pairs.
ValidationReport validate_v_domain(const std::vector<VUtility>& candidates, std::size_t sample_count,
                                   std::uint64_t seed);

/// Rank-dependent utility sum_k base(a_k) (w(F_k) - w(F_{k-1})) with
/// w(p) = p^exponent over best-first cumulatives F. Exponent 1 is expected
/// utility. Throws InconsistentBase or PreconditionViolated (exponent 0).
VUtility rdu_utility(const OrdinalPreference& order, const BernoulliUtility& base, unsigned weight_exponent);

}  // namespace ordlab
