#include "ordlab/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <sstream>

#include "ordlab/error.hpp"
#include "ordlab/random.hpp"

namespace ordlab {

namespace {

constexpr std::size_t kAgents = 3;
constexpr std::size_t kRejectionFactor = 50;

constexpr std::array<std::pair<LemmaId, std::string_view>, 10> kLemmaNames{{
    {LemmaId::L1_effectively_same, "L1_effectively_same"},
    {LemmaId::L2_middle_bump, "L2_middle_bump"},
    {LemmaId::L3_identical_pair, "L3_identical_pair"},
    {LemmaId::L4_top_or_bottom, "L4_top_or_bottom"},
    {LemmaId::L5_positive_b, "L5_positive_b"},
    {LemmaId::L6_one_agent_invariance, "L6_one_agent_invariance"},
    {LemmaId::L7_same_order_pair, "L7_same_order_pair"},
    {LemmaId::L8_interior_ordinality, "L8_interior_ordinality"},
    {LemmaId::L9_support_two, "L9_support_two"},
    {LemmaId::L10_separating, "L10_separating"},
}};

std::string profile_str(const UtilityProfile& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    s += i ? " (" : "(";
    for (std::size_t a = 0; a < p[i].size(); ++a) s += (a ? "," : "") + p[i][a].str();
    s += ")";
  }
  return s;
}

const OrdinalPreference& random_order(Rng& rng, std::size_t m) {
  static const std::vector<OrdinalPreference> three = OrdinalPreference::all(3);
  static const std::vector<OrdinalPreference> four = OrdinalPreference::all(4);
  const auto& pool = m == 3 ? three : four;
  return pool[rng.below(pool.size())];
}

// Grid representative, passed through a random affine map half the time so
// rules see non-canonical inputs too.
BernoulliUtility draw_utility(Rng& rng, const OrdinalPreference& order, const Rational& mu) {
  BernoulliUtility u = grid_utility(order, mu);
  return rng.coin() ? random_affine(rng, u) : u;
}

BernoulliUtility draw_same_order(Rng& rng, const BernoulliUtility& u) {
  return draw_utility(rng, ordinal_of(u), random_mu(rng, default_mu_grid()));
}

UtilityProfile draw_profile(Rng& rng) {
  UtilityProfile p;
  const auto grid = default_mu_grid();
  for (std::size_t i = 0; i < kAgents; ++i) p.push_back(draw_utility(rng, random_order(rng, 3), random_mu(rng, grid)));
  return p;
}

std::pair<std::size_t, std::size_t> draw_pair(Rng& rng) {
  const std::size_t i = rng.below(kAgents);
  const std::size_t j = (i + 1 + rng.below(kAgents - 1)) % kAgents;
  return {i, j};
}

bool in_adjacent_segments(const Allocation& pi, std::size_t agent, const OrdinalPreference& order) {
  return pi.at(agent, order.best().index).is_zero() || pi.at(agent, order.worst().index).is_zero();
}

std::size_t support_size(const Allocation& pi, std::size_t agent) {
  std::size_t k = 0;
  for (const auto& x : pi.row_span(agent)) k += x.is_zero() ? 0 : 1;
  return k;
}

bool same_except(const UtilityProfile& x, const UtilityProfile& y, std::initializer_list<std::size_t> changed) {
  if (x.size() != y.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (std::find(changed.begin(), changed.end(), k) == changed.end() && !(x[k] == y[k])) return false;
  }
  return true;
}

bool same_order(const BernoulliUtility& u, const BernoulliUtility& v) { return ordinal_of(u) == ordinal_of(v); }

bool rows_equal(const Allocation& x, const Allocation& y, std::size_t agent) {
  const auto rx = x.row_span(agent);
  const auto ry = y.row_span(agent);
  return std::equal(rx.begin(), rx.end(), ry.begin(), ry.end());
}

// Positive b-mass for the pair, b being the common middle object.
bool positive_middle(const Allocation& pi, std::size_t i, std::size_t j, const OrdinalPreference& order) {
  const std::size_t b = order.at_rank(1).index;
  return (pi.at(i, b) + pi.at(j, b)).sign() > 0;
}

// nullopt: hypothesis not met. Otherwise whether the conclusion holds.
// Fills w.allocations (and w.separating for L10) from fresh evaluations.
std::optional<bool> evaluate(LemmaId id, LemmaWitness& w, const Rule& rule) {
  if (id == LemmaId::L10_separating) {
    const VMemberSpec& spec = *w.v_member;
    const Lottery& p1 = w.lotteries.at(0);
    const Lottery& p2 = w.lotteries.at(1);
    if (sd_weakly_dominates(p2, p1, spec.order)) return std::nullopt;
    if (!w.separating) {
      try {
        w.separating = separating_utility(spec.build(), p1, p2);
      } catch (const Error& e) {
        w.summary = e.what();
        return false;
      }
    }
    const BernoulliUtility& u1 = *w.separating;
    return ordinal_of(u1) == spec.order && expected_utility(u1, p1) > expected_utility(u1, p2);
  }

  w.allocations.clear();
  const UtilityProfile& u = w.profile;
  const Allocation pi = rule(u);
  w.allocations.push_back(pi);
  const std::size_t i = w.agent->index;
  const OrdinalPreference order = ordinal_of(u[i]);
  auto alt_outcome = [&]() -> const Allocation& {
    w.allocations.push_back(rule(*w.alternate_profile));
    return w.allocations.back();
  };

  switch (id) {
    case LemmaId::L1_effectively_same: {
      if (!same_except(u, *w.alternate_profile, {i}) || !effectively_same(u[i], (*w.alternate_profile)[i])) {
        return std::nullopt;
      }
      return alt_outcome() == pi;
    }
    case LemmaId::L2_middle_bump: {
      const auto& v = (*w.alternate_profile)[i];
      if (!same_except(u, *w.alternate_profile, {i}) || !same_order(u[i], v) ||
          middle_rate(v).value() <= middle_rate(u[i]).value() || !in_adjacent_segments(pi, i, order)) {
        return std::nullopt;
      }
      return rows_equal(alt_outcome(), pi, i);
    }
    case LemmaId::L3_identical_pair:
    case LemmaId::L5_positive_b: {
      const std::size_t j = w.partner->index;
      const bool paired = id == LemmaId::L3_identical_pair ? effectively_same(u[i], u[j]) : same_order(u[i], u[j]);
      if (i == j || !paired || !positive_middle(pi, i, j, order)) return std::nullopt;
      return in_adjacent_segments(pi, i, order) && in_adjacent_segments(pi, j, order);
    }
    case LemmaId::L4_top_or_bottom: {
      const auto& v = (*w.alternate_profile)[i];
      if (!same_except(u, *w.alternate_profile, {i}) || !same_order(u[i], v)) return std::nullopt;
      if (pi.at(i, order.best().index) != 1 && pi.at(i, order.worst().index) != 1) return std::nullopt;
      return rows_equal(alt_outcome(), pi, i);
    }
    case LemmaId::L6_one_agent_invariance:
    case LemmaId::L7_same_order_pair: {
      const std::size_t j = w.partner->index;
      const auto& alt = *w.alternate_profile;
      const bool changes_ok = id == LemmaId::L6_one_agent_invariance
                                  ? same_except(u, alt, {i})
                                  : same_except(u, alt, {i, j}) && same_order(u[j], alt[j]);
      if (i == j || !same_order(u[i], u[j]) || !changes_ok || !same_order(u[i], alt[i]) ||
          !positive_middle(pi, i, j, order)) {
        return std::nullopt;
      }
      return alt_outcome() == pi && in_adjacent_segments(pi, i, order) && in_adjacent_segments(pi, j, order);
    }
    case LemmaId::L8_interior_ordinality: {
      const auto& alt = *w.alternate_profile;
      if (alt.size() != u.size() || support_size(pi, i) != pi.size()) return std::nullopt;
      for (std::size_t k = 0; k < u.size(); ++k) {
        if (!same_order(u[k], alt[k])) return std::nullopt;
      }
      return alt_outcome() == pi;
    }
    case LemmaId::L9_support_two: {
      if (!same_except(u, *w.alternate_profile, {i}) || !same_order(u[i], (*w.alternate_profile)[i]) ||
          support_size(pi, i) > 2) {
        return std::nullopt;
      }
      return alt_outcome() == pi;
    }
    case LemmaId::L10_separating: break;
  }
  return std::nullopt;
}

LemmaWitness draw_instance(LemmaId id, Rng& rng, const Rule& rule) {
  LemmaWitness w;
  if (id == LemmaId::L10_separating) {
    const std::size_t m = rng.coin() ? 3 : 4;
    const OrdinalPreference& order = random_order(rng, m);
    const unsigned exponent = 1 + static_cast<unsigned>(rng.below(3));
    w.v_member = VMemberSpec{order, grid_utility(order, random_mu(rng, default_mu_grid())), exponent};
    static constexpr std::array<long, 4> granularities{4, 6, 12, 60};
    for (int k = 0; k < 2; ++k) {
      w.lotteries.push_back(random_lottery(rng, m, granularities[rng.below(granularities.size())]));
    }
    return w;
  }

  w.profile = draw_profile(rng);
  auto [i, j] = draw_pair(rng);
  w.agent = AgentId{i};
  auto& u = w.profile;
  switch (id) {
    case LemmaId::L1_effectively_same:
      w.alternate_profile = u;
      (*w.alternate_profile)[i] = rng.coin() ? random_affine(rng, u[i]) : canonicalize(u[i]).as_bernoulli();
      break;
    case LemmaId::L2_middle_bump: {
      const Rational mu = middle_rate(u[i]).value();
      const Rational bumped = mu + (Rational(1) - mu) * rng.unit_open(64);
      w.alternate_profile = u;
      (*w.alternate_profile)[i] = draw_utility(rng, ordinal_of(u[i]), bumped);
      break;
    }
    case LemmaId::L3_identical_pair:
      u[j] = random_affine(rng, u[i]);
      w.partner = AgentId{j};
      break;
    case LemmaId::L4_top_or_bottom:
    case LemmaId::L9_support_two:
      w.alternate_profile = u;
      (*w.alternate_profile)[i] = draw_same_order(rng, u[i]);
      break;
    case LemmaId::L5_positive_b:
    case LemmaId::L6_one_agent_invariance:
    case LemmaId::L7_same_order_pair:
      u[j] = draw_same_order(rng, u[i]);
      w.partner = AgentId{j};
      if (id != LemmaId::L5_positive_b) {
        w.alternate_profile = u;
        (*w.alternate_profile)[i] = draw_same_order(rng, u[i]);
        if (id == LemmaId::L7_same_order_pair) (*w.alternate_profile)[j] = draw_same_order(rng, u[j]);
      }
      break;
    case LemmaId::L8_interior_ordinality: {
      if (rng.coin()) {
        for (auto& uk : u) uk = draw_same_order(rng, u[0]);
      }
      w.alternate_profile = u;
      for (auto& v : *w.alternate_profile) v = draw_same_order(rng, v);
      // The agent with an interior lottery, if any, is the hypothesis' i.
      const Allocation pi = rule(u);
      for (std::size_t k = 0; k < u.size(); ++k) {
        if (support_size(pi, k) == pi.size()) {
          w.agent = AgentId{k};
          break;
        }
      }
      break;
    }
    case LemmaId::L10_separating: break;
  }
  return w;
}

std::string failure_summary(LemmaId id, const LemmaWitness& w) {
  if (id == LemmaId::L10_separating) {
    std::ostringstream os;
    os << "no separation for " << w.v_member->order.str() << " (exponent " << w.v_member->exponent << ")";
    if (!w.summary.empty()) os << ": " << w.summary;
    return os.str();
  }
  std::string s = "agent " + std::to_string(w.agent->index);
  if (w.partner) s += " with agent " + std::to_string(w.partner->index);
  s += " at " + profile_str(w.profile);
  if (w.alternate_profile) s += " vs " + profile_str(*w.alternate_profile);
  return s;
}

Verdict axiom_verdict(Axiom axiom, const GridOutcomes& outcomes, const Rule& rule, const CheckConfig& config) {
  switch (axiom) {
    case Axiom::Efficiency: return check_efficiency(outcomes, config);
    case Axiom::StrategyProofness: return check_strategy_proofness(outcomes, config);
    case Axiom::NonBossiness: return check_non_bossiness(outcomes, config);
    default: return check_axiom(axiom, rule, config);
  }
}

}  // namespace

std::string_view to_string(LemmaId id) {
  for (const auto& [k, name] : kLemmaNames) {
    if (k == id) return name;
  }
  return "unknown";
}

LemmaId lemma_from_string(std::string_view name) {
  for (const auto& [k, full] : kLemmaNames) {
    const std::string_view shorter = full.substr(0, full.find('_'));
    if (name == full || name == shorter) return k;
  }
  throw Error(ErrorCode::UsageError, "unknown lemma '" + std::string(name) + "'");
}

std::vector<LemmaId> all_lemmas() {
  std::vector<LemmaId> ids;
  for (const auto& entry : kLemmaNames) ids.push_back(entry.first);
  return ids;
}

std::vector<Axiom> lemma_hypotheses(LemmaId id) {
  switch (id) {
    case LemmaId::L1_effectively_same:
      return {Axiom::StrategyProofness, Axiom::NonBossiness, Axiom::Continuity};
    case LemmaId::L2_middle_bump:
    case LemmaId::L4_top_or_bottom:
      return {Axiom::StrategyProofness};
    case LemmaId::L3_identical_pair:
      return {Axiom::Efficiency, Axiom::Continuity};
    case LemmaId::L10_separating:
      return {};
    default:
      return {Axiom::Efficiency, Axiom::StrategyProofness, Axiom::NonBossiness, Axiom::Continuity};
  }
}

std::string_view to_string(LemmaStatus status) {
  return status == LemmaStatus::Ok ? "Ok" : "HypothesisUnsatisfiable";
}

VUtility VMemberSpec::build() const { return rdu_utility(order, base, exponent); }

LemmaReport verify_lemma(LemmaId id, const Rule& rule, std::size_t trials, std::uint64_t seed) {
  LemmaReport report;
  report.lemma = id;
  report.rule = id == LemmaId::L10_separating ? "-" : rule.name;
  report.trials = trials;
  report.seed = seed;
  const std::size_t budget = kRejectionFactor * trials;
  for (std::uint64_t attempt = 0; report.accepted < trials && report.rejected < budget; ++attempt) {
    Rng rng = Rng::stream(seed, attempt);
    LemmaWitness w = draw_instance(id, rng, rule);
    const std::optional<bool> holds = evaluate(id, w, rule);
    if (!holds) {
      ++report.rejected;
      continue;
    }
    ++report.accepted;
    if (!*holds) {
      w.trial = attempt;
      w.summary = failure_summary(id, w);
      report.failures.push_back(std::move(w));
    }
  }
  if (report.rejected >= budget) report.status = LemmaStatus::HypothesisUnsatisfiable;
  return report;
}

bool reverify_lemma_failure(LemmaId id, const LemmaWitness& witness, const Rule& rule) {
  LemmaWitness fresh = witness;
  fresh.allocations.clear();
  const std::optional<bool> holds = evaluate(id, fresh, rule);
  if (!holds || *holds) return false;
  return id == LemmaId::L10_separating || fresh.allocations == witness.allocations;
}

bool RuleStress::passes_all_axioms() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const Verdict& v) { return v.passed(); });
}

StressReport theorem_stress(const std::vector<Rule>& rule_family, const CheckConfig& config) {
  config.validate();
  StressReport report;
  report.asserted = config.n == 3;
  for (const Rule& original : rule_family) {
    const Rule rule = memoize(original);
    report.rules_tested.push_back(rule.name);
    RuleStress entry;
    entry.rule = rule.name;
    {
      const GridOutcomes outcomes(rule, config);
      for (const Axiom axiom :
           {Axiom::Efficiency, Axiom::StrategyProofness, Axiom::NonBossiness, Axiom::Continuity}) {
        entry.axioms.push_back(axiom_verdict(axiom, outcomes, rule, config));
      }
    }
    entry.ordinality = check_ordinality(rule, config);
    if (entry.passes_all_axioms() && !entry.ordinality.passed()) report.metamorphic_violations.push_back(rule.name);
    report.results.push_back(std::move(entry));
  }
  return report;
}

std::vector<Rule> builtin_family(std::uint64_t seed) {
  std::vector<Rule> family{memoize(rsd_rule()), memoize(ps_rule()), memoize(utilitarian_rule())};
  Rng rng(seed);
  for (int k = 0; k < 9; ++k) {
    const std::size_t i = rng.below(3);
    const std::size_t j = (i + 1 + rng.below(2)) % 3;
    family.push_back(memoize(blend_rule(family[i], family[j], rng.unit_open(12))));
  }
  return family;
}

std::vector<std::vector<VMemberSpec>> sample_v_profiles(std::size_t count, const CheckConfig& config) {
  std::vector<std::vector<VMemberSpec>> profiles;
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng = Rng::stream(config.seed, k);
    std::vector<VMemberSpec> members;
    for (std::size_t i = 0; i < config.n; ++i) {
      const OrdinalPreference& order = random_order(rng, config.n);
      const unsigned exponent = 1 + static_cast<unsigned>(rng.below(3));
      members.push_back(VMemberSpec{order, grid_utility(order, random_mu(rng, config.mu_grid)), exponent});
    }
    profiles.push_back(std::move(members));
  }
  return profiles;
}

Verdict theorem2_check(const Rule& rule, const std::vector<std::vector<VMemberSpec>>& v_profiles,
                       const CheckConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const Verdict ordinal = check_ordinality(rule, config);
  if (!ordinal.passed()) {
    throw Error(ErrorCode::NotOrdinalOnU, rule.name + " is not ordinal on expected utilities: " +
                                              ordinal.witness->summary);
  }
  Verdict v;
  v.axiom = Axiom::Ordinality;
  v.rule = rule.name;
  v.seed = config.seed;

  constexpr std::size_t kSeparationTrials = 16;
  std::size_t separations = 0;
  for (std::size_t k = 0; k < v_profiles.size() && v.passed(); ++k) {
    const auto& members = v_profiles[k];
    if (members.size() != config.n) throw Error(ErrorCode::DimensionMismatch, "V-profile size differs from n");
    std::vector<VUtility> built;
    for (const auto& spec : members) built.push_back(spec.build());
    const ValidationReport validation = validate_v_domain(built, 32, config.seed + k);
    if (!validation.passed()) {
      throw Error(ErrorCode::InvalidVDomain, "V-profile " + std::to_string(k) + " fails the domain conditions");
    }

    // Canonical representative of the cell against other EU representatives.
    Rng rng = Rng::stream(config.seed, k);
    UtilityProfile canonical;
    for (const auto& spec : members) canonical.push_back(grid_utility(spec.order, Rational(1, 2)));
    const Allocation expected = rule(canonical);
    for (std::size_t s = 0; s < config.samples_per_cell; ++s) {
      UtilityProfile other;
      for (const auto& spec : members) other.push_back(draw_utility(rng, spec.order, random_mu(rng, config.mu_grid)));
      Allocation got = rule(other);
      if (!(got == expected)) {
        Witness w;
        w.profile = canonical;
        w.alternate_profile = std::move(other);
        w.gap = max_entry_distance(expected, got);
        w.allocations = {expected, std::move(got)};
        w.summary = "V-profile " + std::to_string(k) + ": cell representatives disagree";
        v.status = VerdictStatus::Fail;
        v.witness = std::move(w);
        break;
      }
    }

    for (std::size_t i = 0; i < members.size() && v.passed(); ++i) {
      for (std::size_t t = 0; t < kSeparationTrials; ++t) {
        const Lottery p1 = random_lottery(rng, config.n, 12);
        const Lottery p2 = random_lottery(rng, config.n, 12);
        if (sd_weakly_dominates(p2, p1, members[i].order)) continue;
        ++separations;
        const BernoulliUtility u1 = separating_utility(built[i], p1, p2);
        if (!(ordinal_of(u1) == members[i].order) || expected_utility(u1, p1) <= expected_utility(u1, p2)) {
          Witness w;
          w.agent = AgentId{i};
          w.summary = "V-profile " + std::to_string(k) + ", agent " + std::to_string(i) +
                      ": separating utility fails for " + built[i].name();
          v.status = VerdictStatus::Fail;
          v.witness = std::move(w);
          break;
        }
      }
    }
  }
  v.coverage = std::to_string(v_profiles.size()) + " V-profiles x " + std::to_string(config.samples_per_cell) +
               " EU representatives; " + std::to_string(separations) + " separating-utility trials";
  v.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
  return v;
}

}  // namespace ordlab
