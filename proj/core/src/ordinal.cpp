#include "ordlab/ordinal.hpp"

#include <algorithm>
#include <numeric>

#include "ordlab/error.hpp"
#include "ordlab/random.hpp"

namespace ordlab {

OrdinalPreference::OrdinalPreference(std::vector<ObjectId> ranking)
    : ranking_(std::move(ranking)), rank_(ranking_.size()) {
  for (std::size_t r = 0; r < ranking_.size(); ++r) rank_[ranking_[r].index] = r;
}

OrdinalPreference OrdinalPreference::make(std::vector<ObjectId> ranking) {
  std::vector<bool> seen(ranking.size(), false);
  for (const ObjectId a : ranking) {
    if (a.index >= ranking.size() || seen[a.index]) {
      throw Error(ErrorCode::NotAPermutation, "ranking does not list every object exactly once");
    }
    seen[a.index] = true;
  }
  return OrdinalPreference(std::move(ranking));
}

OrdinalPreference OrdinalPreference::parse(std::string_view text) {
  std::vector<ObjectId> ranking;
  bool expect_label = true;
  for (const char c : text) {
    if (c == ' ') continue;
    if (expect_label) {
      ranking.push_back(ObjectId::from_label(c));
    } else if (c != '>') {
      throw Error(ErrorCode::ParseError, "expected '>' in ranking '" + std::string(text) + "'");
    }
    expect_label = !expect_label;
  }
  if (ranking.empty() || expect_label) throw Error(ErrorCode::ParseError, "malformed ranking '" + std::string(text) + "'");
  return make(std::move(ranking));
}

std::vector<OrdinalPreference> OrdinalPreference::all(std::size_t m) {
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<OrdinalPreference> out;
  do {
    std::vector<ObjectId> ranking;
    ranking.reserve(m);
    for (const std::size_t a : perm) ranking.push_back(ObjectId{a});
    out.push_back(OrdinalPreference(std::move(ranking)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::string OrdinalPreference::str() const {
  std::string s;
  for (std::size_t r = 0; r < ranking_.size(); ++r) {
    if (r) s += '>';
    s += ranking_[r].label();
  }
  return s;
}

MiddleRate MiddleRate::make(Rational mu) {
  if (mu.sign() <= 0 || mu >= 1) throw Error(ErrorCode::MuOutOfRange, "middle rate " + mu.str() + " not in (0,1)");
  return MiddleRate(std::move(mu));
}

NormalizedUtility NormalizedUtility::make(std::vector<Rational> values) {
  if (values.empty()) throw Error(ErrorCode::DimensionMismatch, "empty utility");
  const Rational low = *std::min_element(values.begin(), values.end());
  const Rational total = std::accumulate(values.begin(), values.end(), Rational(0));
  if (!low.is_zero() || total != 1) {
    throw Error(ErrorCode::PreconditionViolated, "normalized utility needs min 0 and sum 1");
  }
  return NormalizedUtility(BernoulliUtility::make(std::move(values)));
}

std::string_view to_string(SdVerdict v) {
  switch (v) {
    case SdVerdict::Dominates: return "Dominates";
    case SdVerdict::DominatedBy: return "DominatedBy";
    case SdVerdict::Equal: return "Equal";
    case SdVerdict::Incomparable: return "Incomparable";
  }
  return "Unknown";
}

VUtility::VUtility(std::string name, std::size_t objects, Evaluator evaluator)
    : name_(std::move(name)), objects_(objects), evaluator_(std::move(evaluator)) {}

VUtility VUtility::expected(const BernoulliUtility& u, std::string name) {
  return VUtility(std::move(name), u.size(), [u](const Lottery& lot) { return expected_utility(u, lot); });
}

std::vector<Rational> VUtility::degenerate_values() const {
  std::vector<Rational> values;
  values.reserve(objects_);
  for (std::size_t a = 0; a < objects_; ++a) values.push_back(evaluator_(Lottery::degenerate(objects_, ObjectId{a})));
  return values;
}

OrdinalPreference VUtility::ordinal() const { return ordinal_of(degenerate_values()); }

OrdinalPreference ordinal_of(std::span<const Rational> values) {
  if (const auto tie = find_tie(values)) {
    throw Error(ErrorCode::TiesPresent,
                "objects " + ObjectId{tie->first}.label() + " and " + ObjectId{tie->second}.label() + " tie");
  }
  std::vector<ObjectId> ranking(values.size());
  for (std::size_t a = 0; a < values.size(); ++a) ranking[a] = ObjectId{a};
  std::sort(ranking.begin(), ranking.end(),
            [&](ObjectId x, ObjectId y) { return values[x.index] > values[y.index]; });
  return OrdinalPreference::make(std::move(ranking));
}

OrdinalPreference ordinal_of(const BernoulliUtility& u) { return ordinal_of(u.values()); }

MiddleRate middle_rate(const BernoulliUtility& u) {
  if (u.size() != 3) {
    throw Error(ErrorCode::WrongDimension, "middle rate is defined for three objects, got " + std::to_string(u.size()));
  }
  const OrdinalPreference order = ordinal_of(u);
  const Rational& best = u[order.at_rank(0)];
  const Rational& mid = u[order.at_rank(1)];
  const Rational& worst = u[order.at_rank(2)];
  return MiddleRate::make((mid - worst) / (best - worst));
}

bool effectively_same(const BernoulliUtility& u, const BernoulliUtility& v) {
  if (u.size() != 3 || v.size() != 3) throw Error(ErrorCode::WrongDimension, "effectively_same needs three objects");
  return ordinal_of(u) == ordinal_of(v) && middle_rate(u) == middle_rate(v);
}

NormalizedUtility canonicalize(const BernoulliUtility& u) {
  if (u.size() < 2) throw Error(ErrorCode::WrongDimension, "canonical form needs at least two objects");
  const auto values = u.values();
  const Rational low = *std::min_element(values.begin(), values.end());
  Rational total;
  std::vector<Rational> shifted(values.size());
  for (std::size_t a = 0; a < values.size(); ++a) {
    shifted[a] = values[a] - low;
    total += shifted[a];
  }
  for (auto& x : shifted) x /= total;
  return NormalizedUtility::make(std::move(shifted));
}

NormalizedUtility utility_from(const OrdinalPreference& order, const MiddleRate& mu) {
  if (order.size() != 3) throw Error(ErrorCode::WrongDimension, "utility_from is defined for three objects");
  std::vector<Rational> values(3);
  values[order.at_rank(0).index] = 1;
  values[order.at_rank(1).index] = mu.value();
  values[order.at_rank(2).index] = 0;
  return canonicalize(BernoulliUtility::make(std::move(values)));
}

SdVerdict sd_compare(const Lottery& p, const Lottery& q, const OrdinalPreference& order) {
  if (p.size() != q.size() || p.size() != order.size()) {
    throw Error(ErrorCode::DimensionMismatch, "sd_compare dimension mismatch");
  }
  if (p == q) return SdVerdict::Equal;
  bool p_ahead = false;
  bool q_ahead = false;
  Rational cp;
  Rational cq;
  // The full sum is 1 on both sides, so the last object adds nothing.
  for (std::size_t r = 0; r + 1 < order.size(); ++r) {
    cp += p[order.at_rank(r)];
    cq += q[order.at_rank(r)];
    if (cp > cq) p_ahead = true;
    if (cq > cp) q_ahead = true;
  }
  if (p_ahead && q_ahead) return SdVerdict::Incomparable;
  return p_ahead ? SdVerdict::Dominates : SdVerdict::DominatedBy;
}

bool sd_weakly_dominates(const Lottery& p, const Lottery& q, const OrdinalPreference& order) {
  const SdVerdict v = sd_compare(p, q, order);
  return v == SdVerdict::Dominates || v == SdVerdict::Equal;
}

std::optional<ObjectId> separation_threshold(const OrdinalPreference& order, const Lottery& p1, const Lottery& p2) {
  if (p1.size() != order.size() || p2.size() != order.size()) {
    throw Error(ErrorCode::DimensionMismatch, "separation_threshold dimension mismatch");
  }
  for (std::size_t r = order.size(); r-- > 1;) {
    Rational gap;
    for (std::size_t k = 0; k < r; ++k) gap += p1[order.at_rank(k)] - p2[order.at_rank(k)];
    if (gap.sign() > 0) return order.at_rank(r);
  }
  return std::nullopt;
}

namespace {

std::vector<Rational> separating_candidate(const OrdinalPreference& order, std::span<const Rational> values,
                                           ObjectId threshold, const Rational& delta, const Rational& delta_prime) {
  const std::size_t cut = order.rank_of(threshold);
  const Rational& top = values[order.best().index];
  const Rational span = top - values[threshold.index];
  std::vector<Rational> out(values.size());
  for (std::size_t a = 0; a < values.size(); ++a) {
    if (order.rank_of(ObjectId{a}) < cut) {
      out[a] = Rational(1) - delta * ((top - values[a]) / span);
    } else {
      out[a] = delta_prime * values[a];
    }
  }
  return out;
}

bool separates(const std::vector<Rational>& candidate, const OrdinalPreference& order, const Lottery& p1,
               const Lottery& p2) {
  if (find_tie(candidate)) return false;
  if (ordinal_of(candidate) != order) return false;
  return expected_utility(candidate, p1.probs()) > expected_utility(candidate, p2.probs());
}

}  // namespace

BernoulliUtility separating_utility(const VUtility& u, const Lottery& p1, const Lottery& p2,
                                    std::optional<SeparationParams> params) {
  if (p1.size() != u.objects() || p2.size() != u.objects()) {
    throw Error(ErrorCode::DimensionMismatch, "lotteries and utility disagree on the number of objects");
  }
  const std::vector<Rational> values = u.degenerate_values();
  const OrdinalPreference order = ordinal_of(values);
  const auto threshold = separation_threshold(order, p1, p2);
  if (!threshold) {
    throw Error(ErrorCode::PreconditionViolated, "second lottery weakly stochastically dominates the first");
  }

  if (params) {
    if (params->delta.sign() <= 0 || params->delta_prime.sign() <= 0) {
      throw Error(ErrorCode::PreconditionViolated, "delta and delta' must be positive");
    }
    auto candidate = separating_candidate(order, values, *threshold, params->delta, params->delta_prime);
    if (!separates(candidate, order, p1, p2)) {
      throw Error(ErrorCode::ParametersTooLarge, "delta=" + params->delta.str() + ", delta'=" +
                                                     params->delta_prime.str() + " do not separate the lotteries");
    }
    return BernoulliUtility::make(std::move(candidate));
  }

  Rational delta(1, 2);
  const Rational half(1, 2);
  for (int step = 0; step < 512; ++step, delta *= half) {
    auto candidate = separating_candidate(order, values, *threshold, delta, delta);
    if (separates(candidate, order, p1, p2)) return BernoulliUtility::make(std::move(candidate));
  }
  throw std::logic_error("separating_utility: halving did not converge");
}

bool ValidationReport::passed() const {
  return std::all_of(candidates.begin(), candidates.end(), [](const CandidateReport& c) { return c.passed(); });
}

namespace {

// Moves mass from lower- to higher-ranked objects; the result strictly
// dominates q whenever at least one move happens.
std::optional<Lottery> push_up(Rng& rng, const Lottery& q, const OrdinalPreference& order) {
  std::vector<Rational> p(q.probs().begin(), q.probs().end());
  const std::size_t m = order.size();
  const long moves = rng.between(1, 3);
  bool moved = false;
  for (long k = 0; k < moves; ++k) {
    std::vector<std::size_t> donors;
    for (std::size_t r = 1; r < m; ++r) {
      if (p[order.at_rank(r).index].sign() > 0) donors.push_back(r);
    }
    if (donors.empty()) break;
    const std::size_t from = donors[rng.below(donors.size())];
    const std::size_t to = rng.below(from);
    const long den = rng.between(1, 12);
    const Rational amount = p[order.at_rank(from).index] * Rational(rng.between(1, den), den);
    p[order.at_rank(from).index] -= amount;
    p[order.at_rank(to).index] += amount;
    moved = true;
  }
  if (!moved) return std::nullopt;
  return Lottery::make(std::move(p));
}

}  // namespace

ValidationReport validate_v_domain(const std::vector<VUtility>& candidates, std::size_t sample_count,
                                   std::uint64_t seed) {
  if (sample_count == 0) throw Error(ErrorCode::InvalidConfig, "sample_count must be at least 1");
  ValidationReport report;
  Rng root(seed);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const VUtility& v = candidates[c];
    Rng rng = root.fork(c);
    CandidateReport entry;
    entry.name = v.name();
    const auto values = v.degenerate_values();
    if (const auto tie = find_tie(values)) {
      entry.tie = std::pair{ObjectId{tie->first}, ObjectId{tie->second}};
      report.candidates.push_back(std::move(entry));
      continue;
    }
    const OrdinalPreference order = ordinal_of(values);
    while (entry.sd_pairs_checked < sample_count) {
      const Lottery q = random_lottery(rng, v.objects(), 60);
      const auto p = push_up(rng, q, order);
      if (!p) continue;
      ++entry.sd_pairs_checked;
      Rational vp = v(*p);
      Rational vq = v(q);
      if (!(vp > vq)) {
        entry.sd_violation = SdWitness{*p, q, std::move(vp), std::move(vq)};
        break;
      }
    }
    report.candidates.push_back(std::move(entry));
  }
  return report;
}

VUtility rdu_utility(const OrdinalPreference& order, const BernoulliUtility& base, unsigned weight_exponent) {
  if (weight_exponent == 0) throw Error(ErrorCode::PreconditionViolated, "weight exponent must be at least 1");
  if (base.size() != order.size() || ordinal_of(base) != order) {
    throw Error(ErrorCode::InconsistentBase, "base utility does not induce " + order.str());
  }
  std::string name = "rdu(" + order.str() + ",p^" + std::to_string(weight_exponent) + ")";
  return VUtility(std::move(name), base.size(), [order, base, weight_exponent](const Lottery& lot) {
    if (lot.size() != base.size()) throw Error(ErrorCode::DimensionMismatch, "rdu evaluation dimension mismatch");
    Rational value;
    Rational cumulative;
    Rational previous_weight;
    for (std::size_t r = 0; r < order.size(); ++r) {
      const ObjectId a = order.at_rank(r);
      cumulative += lot[a];
      Rational weight = pow(cumulative, weight_exponent);
      value += base[a] * (weight - previous_weight);
      previous_weight = std::move(weight);
    }
    return value;
  });
}

}  // namespace ordlab
