#pragma once

// Executable axioms. Each checker quantifies over a declared finite grid
// (plus seeded samples) and returns a verdict: Pass means no violation was
// found on that grid, Fail carries an exact witness that re-verifies from
// scratch.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordlab/allocation.hpp"
#include "ordlab/ordinal.hpp"
#include "ordlab/rational.hpp"
#include "ordlab/rules.hpp"

namespace ordlab {

enum class Axiom {
  Efficiency,
  StrategyProofness,
  SdStrategyProofness,
  NonBossiness,
  Ordinality,
  Continuity,
};

std::string_view to_string(Axiom axiom);
/// Accepts the kebab-case names used on the command line. Throws UsageError.
Axiom axiom_from_string(std::string_view name);

std::vector<Rational> default_mu_grid();

struct CheckConfig {
  std::vector<Rational> mu_grid = default_mu_grid();
  std::size_t samples_per_cell = 4;
  std::uint64_t seed = 0;
  Rational continuity_gap_tau = inverse_power_of_ten(6);
  Rational continuity_interval_delta = inverse_power_of_ten(9);
  /// Economy size. Values above 3 are exploration only.
  std::size_t n = 3;
  std::size_t workers = 1;
  /// Random others-profiles per (agent, ranking) in the default continuity probes.
  std::size_t continuity_probes_per_order = 3;
  /// Rule evaluations allowed per continuity path.
  std::size_t continuity_max_evaluations = 20000;

  /// Throws InvalidConfig.
  void validate() const;
  std::string grid_description() const;
};

enum class VerdictStatus { Pass, Fail };

std::string_view to_string(VerdictStatus status);

struct Witness {
  std::string summary;
  UtilityProfile profile;
  std::optional<UtilityProfile> alternate_profile;
  std::optional<AgentId> agent;
  /// Rule output at `profile` first; then the dominating allocation or the
  /// rule output at `alternate_profile`.
  std::vector<Allocation> allocations;
  std::optional<Rational> gap;
  std::optional<std::pair<Rational, Rational>> alpha_interval;
};

struct Verdict {
  Axiom axiom = Axiom::Efficiency;
  std::string rule;
  VerdictStatus status = VerdictStatus::Pass;
  std::optional<Witness> witness;
  std::string coverage;
  std::uint64_t seed = 0;
  std::int64_t elapsed_ms = 0;

  bool passed() const { return status == VerdictStatus::Pass; }
};

/// Single-agent utility types on the grid: every ranking (lexicographic)
/// crossed with every mu. For three objects the type is the canonical form
/// of (1, mu, 0); for more objects the k-th ranked object gets mu^k and the
/// worst gets 0.
std::vector<BernoulliUtility> utility_types(std::size_t n, std::span<const Rational> mu_grid);

/// Cardinal representative of `order` at rate `mu`, generalized as above.
BernoulliUtility grid_utility(const OrdinalPreference& order, const Rational& mu);

/// Every profile of grid types, indexed in mixed radix (agent 0 most significant).
class ProfileGrid {
 public:
  ProfileGrid(std::size_t n, std::vector<BernoulliUtility> types);

  std::size_t agents() const { return n_; }
  std::size_t type_count() const { return types_.size(); }
  std::size_t profile_count() const { return count_; }
  const std::vector<BernoulliUtility>& types() const { return types_; }

  std::size_t type_of(std::size_t profile, std::size_t agent) const;
  std::size_t with_type(std::size_t profile, std::size_t agent, std::size_t type) const;
  UtilityProfile profile(std::size_t index) const;

 private:
  std::size_t n_;
  std::vector<BernoulliUtility> types_;
  std::vector<std::size_t> stride_;
  std::size_t count_;
};

/// Rule outputs on every grid profile, computed once and shared between the
/// unilateral-deviation checkers.
class GridOutcomes {
 public:
  GridOutcomes(const Rule& rule, const CheckConfig& config);

  const ProfileGrid& grid() const { return grid_; }
  const Allocation& at(std::size_t profile) const { return outcomes_[profile]; }
  const std::string& rule_name() const { return rule_name_; }

 private:
  std::string rule_name_;
  ProfileGrid grid_;
  std::vector<Allocation> outcomes_;
};

Verdict check_efficiency(const Rule& rule, const std::vector<UtilityProfile>& profiles, std::size_t workers = 1);
Verdict check_efficiency(const GridOutcomes& outcomes, const CheckConfig& config);

Verdict check_strategy_proofness(const Rule& rule, const CheckConfig& config);
Verdict check_strategy_proofness(const GridOutcomes& outcomes, const CheckConfig& config);

/// Exhaustive over ordinal profiles and ordinal deviations. Runs
/// check_ordinality first and throws NotOrdinal if it fails.
Verdict check_sd_strategy_proofness(const Rule& rule, const CheckConfig& config = {});

Verdict check_non_bossiness(const Rule& rule, const CheckConfig& config);
Verdict check_non_bossiness(const GridOutcomes& outcomes, const CheckConfig& config);

Verdict check_ordinality(const Rule& rule, const CheckConfig& config);

/// Probes u(alpha) = alpha * end1 + (1 - alpha) * end0 for `agent`, others
/// fixed as in `base`, by bisection. A jump of at least tau trapped in an
/// alpha-interval narrower than delta is a Fail.
/// Throws EndpointsInDifferentCones.
Verdict check_ncc_continuity(const Rule& rule, AgentId agent, const UtilityProfile& base,
                             const std::pair<NormalizedUtility, NormalizedUtility>& endpoints,
                             const CheckConfig& config);

struct ContinuityProbe {
  AgentId agent;
  UtilityProfile base;
  NormalizedUtility end0;
  NormalizedUtility end1;
};

/// For each agent and ranking: a path from the lowest to the highest grid mu
/// against others sharing the ranking, and `continuity_probes_per_order`
/// seeded random others-profiles.
std::vector<ContinuityProbe> default_continuity_probes(const CheckConfig& config);

/// check_ncc_continuity over the default probes; first failing probe wins.
Verdict check_continuity(const Rule& rule, const CheckConfig& config);

/// Runs the named axiom with its default inputs (the grid for efficiency).
Verdict check_axiom(Axiom axiom, const Rule& rule, const CheckConfig& config);

/// Re-derives a Fail verdict's witness using only rule evaluations,
/// expected utilities and the LP domination test. False for Pass verdicts.
bool reverify(const Verdict& verdict, const Rule& rule, const CheckConfig& config);

}  // namespace ordlab
