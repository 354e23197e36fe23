#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "ordlab/axioms.hpp"
#include "ordlab/error.hpp"
#include "ordlab/random.hpp"
#include "ordlab/rules.hpp"
#include "support.hpp"

namespace ordlab {
namespace {

using test::A;
using test::R;
using test::U;

// a>b>c, a>c>b, b>a>c
UtilityProfile mixed_profile() { return {U({"3", "2", "1"}), U({"3", "1", "2"}), U({"2", "3", "1"})}; }

// Serial dictatorship averaged over priority orders, written from scratch.
Allocation rsd_oracle(const UtilityProfile& profile) {
  const std::size_t n = profile.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<Rational>> sum(n, std::vector<Rational>(n));
  std::size_t count = 0;
  do {
    std::vector<bool> taken(n, false);
    for (const std::size_t i : order) {
      std::size_t pick = n;
      for (std::size_t a = 0; a < n; ++a) {
        if (!taken[a] && (pick == n || profile[i][a] > profile[i][pick])) pick = a;
      }
      taken[pick] = true;
      sum[i][pick] += 1;
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  for (auto& row : sum) {
    for (auto& x : row) x /= Rational(static_cast<long>(count));
  }
  return Allocation::make(sum);
}

TEST(Ps, FrozenProfile) {
  EXPECT_EQ(ps_allocate(mixed_profile()),
            A({{"1/2", "1/4", "1/4"}, {"1/2", "0", "1/2"}, {"0", "3/4", "1/4"}}));
}

TEST(Ps, IdenticalRankingsShareEqually) {
  const UtilityProfile same{U({"3", "2", "1"}), U({"1", "1/2", "0"}), U({"9", "8", "-1"})};
  EXPECT_EQ(ps_allocate(same), Allocation::uniform(3));
}

TEST(Rsd, FrozenProfile) {
  EXPECT_EQ(rsd_allocate(mixed_profile()),
            A({{"1/2", "1/6", "1/3"}, {"1/2", "0", "1/2"}, {"0", "5/6", "1/6"}}));
}

TEST(Rsd, MatchesOracle) {
  Rng rng(4);
  for (std::size_t n : {3u, 4u}) {
    const auto orders = OrdinalPreference::all(n);
    for (int k = 0; k < 30; ++k) {
      UtilityProfile p;
      for (std::size_t i = 0; i < n; ++i) p.push_back(grid_utility(orders[rng.below(orders.size())], rng.unit_open(9)));
      EXPECT_EQ(rsd_allocate(p), rsd_oracle(p));
    }
  }
}

TEST(Serial, PriorityOrder) {
  EXPECT_EQ(serial_dictatorship_allocate(mixed_profile()),
            A({{"1", "0", "0"}, {"0", "0", "1"}, {"0", "1", "0"}}));
}

TEST(Utilitarian, GridWitnessProfiles) {
  const auto abc = OrdinalPreference::parse("a>b>c");
  const UtilityProfile rising{grid_utility(abc, R("1/10")), grid_utility(abc, R("1/2")), grid_utility(abc, R("9/10"))};
  const UtilityProfile falling{grid_utility(abc, R("9/10")), grid_utility(abc, R("1/2")), grid_utility(abc, R("1/10"))};
  const std::vector<std::size_t> first{0, 2, 1};
  const std::vector<std::size_t> second{1, 2, 0};
  EXPECT_EQ(utilitarian_allocate(rising), Allocation::from_assignment(first));
  EXPECT_EQ(utilitarian_allocate(falling), Allocation::from_assignment(second));
}

TEST(Utilitarian, MatchesEnumerationOnCanonicalUtilities) {
  Rng rng(12);
  const auto orders = OrdinalPreference::all(3);
  for (int k = 0; k < 60; ++k) {
    UtilityProfile raw;
    UtilityProfile canonical;
    for (int i = 0; i < 3; ++i) {
      const auto u = random_affine(rng, grid_utility(orders[rng.below(6)], rng.unit_open(30)));
      raw.push_back(u);
      canonical.push_back(BernoulliUtility::make(test::normalized(u)));
    }
    const auto oracle = test::enumerate_welfare(canonical);
    if (oracle.ties != 1) continue;
    EXPECT_EQ(utilitarian_allocate(raw), Allocation::from_assignment(oracle.assignment));
  }
}

TEST(Rules, IgnoreAffineRescaling) {
  Rng rng(6);
  for (const Rule& rule : {rsd_rule(), ps_rule(), serial_dictatorship_rule(), utilitarian_rule()}) {
    for (int k = 0; k < 10; ++k) {
      UtilityProfile p = mixed_profile();
      UtilityProfile q;
      for (const auto& u : p) q.push_back(random_affine(rng, u));
      EXPECT_EQ(rule(p), rule(q)) << rule.name;
    }
  }
}

TEST(Rules, Uniform) { EXPECT_EQ(uniform_rule()(mixed_profile()), Allocation::uniform(3)); }

TEST(Rules, Blend) {
  const Rule blend = blend_rule(rsd_rule(), serial_dictatorship_rule(), R("1/3"));
  EXPECT_EQ(blend.name, "blend:rsd:serial:1/3");
  EXPECT_EQ(blend(mixed_profile()),
            convex_combination(R("1/3"), rsd_allocate(mixed_profile()), serial_dictatorship_allocate(mixed_profile())));
  EXPECT_THROW(blend_rule(rsd_rule(), ps_rule(), R("2")), Error);
}

TEST(Rules, ByName) {
  for (const char* name : {"rsd", "ps", "utilitarian", "serial", "uniform"}) EXPECT_EQ(rule_by_name(name).name, name);
  const Rule b = rule_by_name("blend:rsd:utilitarian:1/2");
  EXPECT_EQ(b.name, "blend:rsd:utilitarian:1/2");
  EXPECT_EQ(b(mixed_profile()), convex_combination(R("1/2"), rsd_allocate(mixed_profile()),
                                                   utilitarian_allocate(mixed_profile())));
  try {
    rule_by_name("dictator");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownRule);
  }
  EXPECT_THROW(rule_by_name("blend:rsd:1/2"), Error);
}

TEST(Rules, MemoizedAgrees) {
  const Rule cached = memoize(ps_rule());
  EXPECT_EQ(cached.name, "ps");
  for (int k = 0; k < 2; ++k) EXPECT_EQ(cached(mixed_profile()), ps_allocate(mixed_profile()));
}

}  // namespace
}  // namespace ordlab
