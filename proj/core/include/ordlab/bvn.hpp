#pragma once

// Birkhoff-von Neumann decomposition: a bistochastic allocation as a lottery
// over permutation matrices, so that all agents' lotteries can be realized
// jointly.

#include <cstddef>
#include <vector>

#include "ordlab/allocation.hpp"
#include "ordlab/rational.hpp"

namespace ordlab {

/// assignment[i] is the object agent i receives.
class PermutationMatrix {
 public:
  /// Throws NotAPermutation.
  static PermutationMatrix make(std::vector<std::size_t> assignment);
  static PermutationMatrix identity(std::size_t n);

  std::size_t size() const { return assignment_.size(); }
  std::size_t object_of(std::size_t agent) const { return assignment_[agent]; }
  const std::vector<std::size_t>& assignment() const { return assignment_; }

  friend bool operator==(const PermutationMatrix&, const PermutationMatrix&) = default;

 private:
  explicit PermutationMatrix(std::vector<std::size_t> a) : assignment_(std::move(a)) {}
  std::vector<std::size_t> assignment_;
};

struct DecompositionTerm {
  Rational weight;
  PermutationMatrix perm;

  friend bool operator==(const DecompositionTerm&, const DecompositionTerm&) = default;
};

struct Decomposition {
  std::vector<DecompositionTerm> terms;

  /// Positive weights summing to exactly one over permutations of one size.
  bool well_formed() const;
};

/// Greedy Birkhoff: repeatedly peel off the lexicographically first
/// permutation in the support of the remainder at its minimum entry.
/// At most (n-1)^2 + 1 terms.
Decomposition decompose(const Allocation& alloc);

/// Weighted sum of the permutation matrices. Throws PreconditionViolated
/// when the decomposition is not well formed.
Allocation recompose(const Decomposition& d);

}  // namespace ordlab
