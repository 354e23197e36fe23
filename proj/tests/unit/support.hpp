#pragma once

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "ordlab/allocation.hpp"
#include "ordlab/rational.hpp"

namespace ordlab::test {

inline Rational R(const char* text) { return Rational::parse(text); }

inline std::vector<Rational> Rs(std::initializer_list<const char*> texts) {
  std::vector<Rational> out;
  for (const char* t : texts) out.push_back(R(t));
  return out;
}

inline BernoulliUtility U(std::initializer_list<const char*> texts) { return BernoulliUtility::make(Rs(texts)); }

inline Lottery L(std::initializer_list<const char*> texts) { return Lottery::make(Rs(texts)); }

inline Allocation A(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<Rational>> grid;
  for (const auto& row : rows) grid.push_back(Rs(row));
  return Allocation::make(grid);
}

// Brute-force welfare optimum over deterministic assignments. By
// Birkhoff-von Neumann a linear objective on the bistochastic polytope is
// maximized at one of them.
struct BestAssignment {
  Rational value;
  std::vector<std::size_t> assignment;
  std::size_t ties = 0;
};

inline BestAssignment enumerate_welfare(const UtilityProfile& profile) {
  std::vector<std::size_t> perm(profile.size());
  std::iota(perm.begin(), perm.end(), 0);
  BestAssignment best;
  bool first = true;
  do {
    Rational total;
    for (std::size_t i = 0; i < perm.size(); ++i) total += profile[i][perm[i]];
    if (first || total > best.value) {
      best = {total, perm, 1};
      first = false;
    } else if (total == best.value) {
      ++best.ties;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// (u - min) / sum(u - min), computed independently of the library.
inline std::vector<Rational> normalized(const BernoulliUtility& u) {
  Rational lo = u[0];
  for (const auto& x : u.values()) lo = std::min(lo, x);
  Rational sum;
  for (const auto& x : u.values()) sum += x - lo;
  std::vector<Rational> out;
  for (const auto& x : u.values()) out.push_back((x - lo) / sum);
  return out;
}

}  // namespace ordlab::test
