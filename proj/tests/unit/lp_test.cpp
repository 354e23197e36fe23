#include <gtest/gtest.h>

#include "ordlab/axioms.hpp"
#include "ordlab/error.hpp"
#include "ordlab/lp.hpp"
#include "ordlab/random.hpp"
#include "support.hpp"

namespace ordlab {
namespace {

using test::A;
using test::R;
using test::U;

UtilityProfile random_profile(Rng& rng, std::size_t n) {
  const auto orders = OrdinalPreference::all(n);
  UtilityProfile p;
  for (std::size_t i = 0; i < n; ++i) {
    p.push_back(random_affine(rng, grid_utility(orders[rng.below(orders.size())], rng.unit_open(20))));
  }
  return p;
}

TEST(Maximize, WelfareMatchesPermutationEnumeration) {
  Rng rng(8);
  for (std::size_t n : {3u, 4u}) {
    for (int k = 0; k < 40; ++k) {
      const UtilityProfile profile = random_profile(rng, n);
      const auto oracle = test::enumerate_welfare(profile);
      const LpResult result = maximize(LinearProgram::welfare(profile));
      ASSERT_EQ(result.status, LpStatus::Optimal);
      EXPECT_EQ(result.value, oracle.value);
      Rational attained;
      for (std::size_t i = 0; i < n; ++i) attained += expected_utility(profile[i].values(), result.argmax->row_span(i));
      EXPECT_EQ(attained, oracle.value);
      if (oracle.ties == 1) {
        EXPECT_EQ(*result.argmax, Allocation::from_assignment(oracle.assignment));
      }
    }
  }
}

TEST(Maximize, TieBreakIsLexicographicallySmallest) {
  // Everyone indifferent in total: every allocation is optimal.
  LinearProgram lp;
  lp.n = 3;
  lp.objective.assign(9, Rational(0));
  const LpResult result = maximize(lp);
  ASSERT_EQ(result.status, LpStatus::Optimal);
  const std::vector<std::size_t> reversed{2, 1, 0};
  EXPECT_EQ(*result.argmax, Allocation::from_assignment(reversed));
}

TEST(Maximize, FloorsBind) {
  LinearProgram lp;
  lp.n = 3;
  lp.objective = test::Rs({"0", "0", "0", "1", "0", "0", "0", "0", "0"});
  lp.floors.push_back({AgentId{0}, test::Rs({"1", "0", "0"}), R("1/2")});
  const LpResult result = maximize(lp);
  ASSERT_EQ(result.status, LpStatus::Optimal);
  EXPECT_EQ(result.value, R("1/2"));
  EXPECT_GE(result.argmax->at(0, 0), R("1/2"));
}

TEST(Maximize, InfeasibleFloors) {
  LinearProgram lp;
  lp.n = 3;
  lp.objective.assign(9, Rational(1));
  lp.floors.push_back({AgentId{1}, test::Rs({"1", "0", "0"}), R("3/2")});
  EXPECT_EQ(maximize(lp).status, LpStatus::Infeasible);
}

TEST(Maximize, MalformedProgram) {
  LinearProgram lp;
  lp.n = 3;
  lp.objective.assign(8, Rational(1));
  EXPECT_THROW(maximize(lp), Error);
  lp.objective.assign(9, Rational(1));
  lp.floors.push_back({AgentId{5}, test::Rs({"1", "0", "0"}), R("0")});
  EXPECT_THROW(maximize(lp), Error);
}

TEST(Maximize, ListingNamesVariables) {
  const std::string text = to_string(LinearProgram::welfare({U({"1", "0", "1/2"}), U({"0", "1", "1/2"}),
                                                             U({"1/2", "0", "1"})}));
  EXPECT_NE(text.find("x1a"), std::string::npos);
  EXPECT_NE(text.find("x3c"), std::string::npos);
}

TEST(Dominates, Definition) {
  const UtilityProfile profile{U({"1", "1/2", "0"}), U({"1/2", "1", "0"}), U({"0", "1/2", "1"})};
  const Allocation swapped = A({{"0", "1", "0"}, {"1", "0", "0"}, {"0", "0", "1"}});
  const Allocation best = Allocation::identity(3);
  EXPECT_TRUE(dominates(profile, best, swapped));
  EXPECT_FALSE(dominates(profile, swapped, best));
  EXPECT_FALSE(dominates(profile, best, best));
}

TEST(FindDominating, OpposedPairIsSwapped) {
  const UtilityProfile profile{U({"1", "1/2", "0"}), U({"1/2", "1", "0"}), U({"1/2", "0", "1"})};
  const Allocation crossed = A({{"0", "1", "0"}, {"1", "0", "0"}, {"0", "0", "1"}});
  const auto better = find_dominating(profile, crossed);
  ASSERT_TRUE(better);
  EXPECT_EQ(*better, Allocation::identity(3));
  EXPECT_FALSE(find_dominating(profile, Allocation::identity(3)));
}

TEST(FindDominating, WelfareOptimaAreUndominated) {
  Rng rng(21);
  for (int k = 0; k < 30; ++k) {
    const UtilityProfile profile = random_profile(rng, 3);
    const auto oracle = test::enumerate_welfare(profile);
    EXPECT_FALSE(find_dominating(profile, Allocation::from_assignment(oracle.assignment)));
  }
}

TEST(FindDominating, ReturnedDominatorsSatisfyTheDefinition) {
  Rng rng(34);
  int found = 0;
  for (int k = 0; k < 40; ++k) {
    const UtilityProfile profile = random_profile(rng, 3);
    const Allocation x = random_bistochastic(rng, 3, 3, 12);
    if (const auto y = find_dominating(profile, x)) {
      ++found;
      bool strict = false;
      for (std::size_t i = 0; i < 3; ++i) {
        const Rational gain = expected_utility(profile[i].values(), y->row_span(i)) -
                              expected_utility(profile[i].values(), x.row_span(i));
        EXPECT_GE(gain, Rational(0));
        strict = strict || gain > Rational(0);
      }
      EXPECT_TRUE(strict);
    }
  }
  EXPECT_GT(found, 0);
}

}  // namespace
}  // namespace ordlab
