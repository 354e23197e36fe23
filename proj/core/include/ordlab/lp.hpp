#pragma once

// Exact rational linear programming over the bistochastic polytope.
//
// Variables are the n x n allocation entries (row-major). Constraints are
// the row and column sums plus optional per-agent floors on expected
// utility. The solver is a two-phase dense tableau simplex under Bland's
// rule; among optimal points it returns the lexicographically smallest
// allocation (row-major), so rules built on it are deterministic.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ordlab/allocation.hpp"
#include "ordlab/rational.hpp"

namespace ordlab {

/// utility . allocation_row(agent) >= bound
struct UtilityFloor {
  AgentId agent;
  std::vector<Rational> utility;
  Rational bound;
};

struct LinearProgram {
  std::size_t n = 3;
  /// Coefficient per allocation entry, row-major, size n * n.
  std::vector<Rational> objective;
  std::vector<UtilityFloor> floors;

  /// Objective sum_i u_i . pi_i, no floors.
  static LinearProgram welfare(const UtilityProfile& profile);
};

enum class LpStatus { Optimal, Infeasible };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::optional<Allocation> argmax;
};

/// Throws MalformedProgram when dimensions disagree.
LpResult maximize(const LinearProgram& lp);

/// Plain-text equation listing of the program, for debugging dumps.
std::string to_string(const LinearProgram& lp);

/// True when `candidate` dominates `status_quo` at `profile`: nobody is worse
/// off and somebody is strictly better off.
bool dominates(const UtilityProfile& profile, const Allocation& candidate, const Allocation& status_quo);

/// Maximizes total utility subject to every agent weakly gaining; returns the
/// argmax when the optimum strictly exceeds the status-quo total.
std::optional<Allocation> find_dominating(const UtilityProfile& profile, const Allocation& alloc);

}  // namespace ordlab
