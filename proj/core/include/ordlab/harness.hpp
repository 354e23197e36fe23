#pragma once

// Lemma-level property tests, the metamorphic stress test over rule
// families, and the extended-domain check for ordinal rules.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordlab/axioms.hpp"
#include "ordlab/ordinal.hpp"
#include "ordlab/rules.hpp"

namespace ordlab {

enum class LemmaId {
  L1_effectively_same,
  L2_middle_bump,
  L3_identical_pair,
  L4_top_or_bottom,
  L5_positive_b,
  L6_one_agent_invariance,
  L7_same_order_pair,
  L8_interior_ordinality,
  L9_support_two,
  L10_separating,
};

std::string_view to_string(LemmaId id);
/// Accepts "L1".."L10" or the full enumerator name. Throws UsageError.
LemmaId lemma_from_string(std::string_view name);
std::vector<LemmaId> all_lemmas();

/// Axioms a rule must satisfy for the lemma's conclusion to be guaranteed.
std::vector<Axiom> lemma_hypotheses(LemmaId id);

/// An extended-domain member rebuilt from data: rank-dependent utility with
/// weighting exponent (1 = expected utility).
struct VMemberSpec {
  OrdinalPreference order;
  BernoulliUtility base;
  unsigned exponent = 1;

  VUtility build() const;
};

struct LemmaWitness {
  std::size_t trial = 0;
  std::string summary;
  UtilityProfile profile;
  std::optional<UtilityProfile> alternate_profile;
  std::optional<AgentId> agent;
  std::optional<AgentId> partner;
  /// Rule output at `profile`, then at `alternate_profile` when present.
  std::vector<Allocation> allocations;

  std::optional<VMemberSpec> v_member;
  std::vector<Lottery> lotteries;
  std::optional<BernoulliUtility> separating;
};

enum class LemmaStatus { Ok, HypothesisUnsatisfiable };

std::string_view to_string(LemmaStatus status);

struct LemmaReport {
  LemmaId lemma = LemmaId::L1_effectively_same;
  std::string rule;
  std::size_t trials = 0;
  /// Sampled instances meeting the hypothesis pattern.
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<LemmaWitness> failures;
  std::uint64_t seed = 0;
  LemmaStatus status = LemmaStatus::Ok;
};

/// Rejection-samples instances of the lemma's hypothesis pattern until
/// `trials` are accepted or 50 * trials are rejected. L10 ignores `rule`.
/// The caller is responsible for the rule satisfying lemma_hypotheses(id).
LemmaReport verify_lemma(LemmaId id, const Rule& rule, std::size_t trials, std::uint64_t seed);

/// Re-checks that a recorded failure violates the lemma's conclusion.
bool reverify_lemma_failure(LemmaId id, const LemmaWitness& witness, const Rule& rule);

struct RuleStress {
  std::string rule;
  std::vector<Verdict> axioms;  // efficiency, strategy-proofness, non-bossiness, continuity
  Verdict ordinality;

  bool passes_all_axioms() const;
};

struct StressReport {
  std::vector<std::string> rules_tested;
  std::vector<RuleStress> results;
  std::vector<std::string> metamorphic_violations;
  /// False in exploration mode (n > 3): violations are recorded only.
  bool asserted = true;

  bool passed() const { return !asserted || metamorphic_violations.empty(); }
};

StressReport theorem_stress(const std::vector<Rule>& rule_family, const CheckConfig& config);

/// rsd, ps, utilitarian and nine seeded blends of distinct pairs of them.
std::vector<Rule> builtin_family(std::uint64_t seed);

/// Throws NotOrdinalOnU when check_ordinality fails and InvalidVDomain when a
/// profile member fails validate_v_domain.
Verdict theorem2_check(const Rule& rule, const std::vector<std::vector<VMemberSpec>>& v_profiles,
                       const CheckConfig& config);

/// Seeded profiles of rank-dependent members with exponents 1 to 3.
std::vector<std::vector<VMemberSpec>> sample_v_profiles(std::size_t count, const CheckConfig& config);

}  // namespace ordlab
