#pragma once

// Allocation rules: a uniform wrapper plus ordinal and cardinal reference
// implementations used as specimens by the axiom checkers.

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "ordlab/allocation.hpp"
#include "ordlab/rational.hpp"

namespace ordlab {

/// A deterministic map from utility profiles to allocations.
///
/// `claims_ordinal` is metadata only. The checkers never read it.
struct Rule {
  std::string name;
  std::function<Allocation(const UtilityProfile&)> allocate;
  bool claims_ordinal = false;

  Allocation operator()(const UtilityProfile& profile) const { return allocate(profile); }
};

/// Average of serial dictatorship over all n! priority orders.
Allocation rsd_allocate(const UtilityProfile& profile);

/// Simultaneous eating at unit speed, each agent eating their best object
/// with supply left; exact rational breakpoints.
Allocation ps_allocate(const UtilityProfile& profile);

/// Total canonical utility maximized over the bistochastic polytope, with the
/// engine's lexicographic tie-break.
Allocation utilitarian_allocate(const UtilityProfile& profile);

/// Agents pick in index order 0, 1, ..., n-1.
Allocation serial_dictatorship_allocate(const UtilityProfile& profile);

Rule rsd_rule();
Rule ps_rule();
Rule utilitarian_rule();
Rule serial_dictatorship_rule();
/// Always the uniform matrix.
Rule uniform_rule();

/// alpha * r1 + (1 - alpha) * r2 entrywise. Throws AlphaOutOfRange.
Rule blend_rule(Rule r1, Rule r2, Rational alpha);

/// Caches outputs by exact profile; safe to share across threads.
Rule memoize(Rule rule);

/// "rsd", "ps", "utilitarian", "serial", "uniform", or
/// "blend:<rule>:<rule>:p/q". Throws UnknownRule.
Rule rule_by_name(std::string_view name);

}  // namespace ordlab
