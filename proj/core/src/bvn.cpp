#include "ordlab/bvn.hpp"


#include "ordlab/error.hpp"

namespace ordlab {

PermutationMatrix PermutationMatrix::make(std::vector<std::size_t> assignment) {
  std::vector<bool> used(assignment.size(), false);
  for (const std::size_t a : assignment) {
    if (a >= assignment.size() || used[a]) throw Error(ErrorCode::NotAPermutation, "assignment is not a bijection");
    used[a] = true;
  }
  return PermutationMatrix(std::move(assignment));
}

PermutationMatrix PermutationMatrix::identity(std::size_t n) {
  std::vector<std::size_t> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = i;
  return PermutationMatrix(std::move(a));
}

bool Decomposition::well_formed() const {
  if (terms.empty()) return false;
  const std::size_t n = terms.front().perm.size();
  Rational total;
  for (const auto& t : terms) {
    if (t.weight.sign() <= 0 || t.perm.size() != n) return false;
    total += t.weight;
  }
  return total == 1;
}

namespace {

// Depth-first search over agents in order, objects in increasing index:
// the first complete matching found is the lexicographically smallest.
bool find_matching(const std::vector<Rational>& remaining, std::size_t n, std::size_t agent,
                   std::vector<std::size_t>& assignment, std::vector<bool>& used) {
  if (agent == n) return true;
  for (std::size_t a = 0; a < n; ++a) {
    if (used[a] || remaining[agent * n + a].sign() <= 0) continue;
    used[a] = true;
    assignment[agent] = a;
    if (find_matching(remaining, n, agent + 1, assignment, used)) return true;
    used[a] = false;
  }
  return false;
}

}  // namespace

Decomposition decompose(const Allocation& alloc) {
  const std::size_t n = alloc.size();
  std::vector<Rational> remaining(alloc.entries().begin(), alloc.entries().end());
  Rational left(1);
  Decomposition d;
  while (left.sign() > 0) {
    std::vector<std::size_t> assignment(n);
    std::vector<bool> used(n, false);
    // A positive multiple of a bistochastic matrix always has a perfect
    // matching in its support (Hall's condition).
    if (!find_matching(remaining, n, 0, assignment, used)) {
      throw std::logic_error("decompose: support has no perfect matching");
    }
    Rational weight = remaining[assignment[0]];
    for (std::size_t i = 1; i < n; ++i) {
      if (remaining[i * n + assignment[i]] < weight) weight = remaining[i * n + assignment[i]];
    }
    for (std::size_t i = 0; i < n; ++i) remaining[i * n + assignment[i]] -= weight;
    left -= weight;
    d.terms.push_back(DecompositionTerm{std::move(weight), PermutationMatrix::make(std::move(assignment))});
  }
  return d;
}

Allocation recompose(const Decomposition& d) {
  if (!d.well_formed()) throw Error(ErrorCode::PreconditionViolated, "decomposition weights must be positive and sum to 1");
  AllocationBuilder builder(d.terms.front().perm.size());
  for (const auto& t : d.terms) builder.add_assignment(t.perm.assignment(), t.weight);
  return std::move(builder).finish();
}

}  // namespace ordlab
