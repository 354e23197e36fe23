#include <gtest/gtest.h>

#include "ordlab/axioms.hpp"
#include "ordlab/error.hpp"
#include "ordlab/lp.hpp"
#include "support.hpp"

namespace ordlab {
namespace {

using test::R;
using test::U;

CheckConfig small_grid() {
  CheckConfig c;
  c.mu_grid = {R("1/4"), R("3/4")};
  c.seed = 5;
  return c;
}

TEST(CheckConfig, Validation) {
  CheckConfig c;
  EXPECT_NO_THROW(c.validate());
  c.mu_grid = {R("1")};
  EXPECT_THROW(c.validate(), Error);
  c = CheckConfig{};
  c.n = 2;
  EXPECT_THROW(c.validate(), Error);
  c = CheckConfig{};
  c.workers = 0;
  EXPECT_THROW(c.validate(), Error);
  c = CheckConfig{};
  c.continuity_gap_tau = R("0");
  EXPECT_THROW(c.validate(), Error);
}

TEST(Axiom, Names) {
  for (const Axiom a : {Axiom::Efficiency, Axiom::StrategyProofness, Axiom::SdStrategyProofness, Axiom::NonBossiness,
                        Axiom::Ordinality, Axiom::Continuity}) {
    EXPECT_EQ(axiom_from_string(to_string(a)), a);
  }
  EXPECT_THROW(axiom_from_string("fairness"), Error);
}

TEST(Grid, TypesAndIndexing) {
  const auto types = utility_types(3, default_mu_grid());
  ASSERT_EQ(types.size(), 42u);
  EXPECT_EQ(types[0], U({"10/11", "1/11", "0"}));
  EXPECT_EQ(grid_utility(OrdinalPreference::parse("b>c>a"), R("1/2")), U({"0", "2/3", "1/3"}));
  EXPECT_EQ(grid_utility(OrdinalPreference::parse("a>b>c>d"), R("1/2")), U({"4/7", "2/7", "1/7", "0"}));

  const ProfileGrid grid(3, types);
  EXPECT_EQ(grid.profile_count(), 74088u);
  const std::size_t k = 5 * 42 * 42 + 17 * 42 + 40;
  EXPECT_EQ(grid.type_of(k, 0), 5u);
  EXPECT_EQ(grid.type_of(k, 1), 17u);
  EXPECT_EQ(grid.type_of(k, 2), 40u);
  EXPECT_EQ(grid.with_type(k, 1, 3), 5u * 42 * 42 + 3 * 42 + 40);
  EXPECT_EQ(grid.profile(k)[1], types[17]);
}

TEST(StrategyProofness, RsdPassesUtilitarianFails) {
  const CheckConfig c = small_grid();
  EXPECT_TRUE(check_strategy_proofness(rsd_rule(), c).passed());
  EXPECT_TRUE(check_strategy_proofness(serial_dictatorship_rule(), c).passed());
  const Rule util = utilitarian_rule();
  const Verdict v = check_strategy_proofness(util, c);
  ASSERT_FALSE(v.passed());
  EXPECT_GT(*v.witness->gap, Rational(0));
  EXPECT_TRUE(reverify(v, util, c));
}

TEST(StrategyProofness, PsIsManipulableInExpectedUtility) {
  const Rule ps = ps_rule();
  const Verdict v = check_strategy_proofness(ps, CheckConfig{});
  ASSERT_FALSE(v.passed());
  EXPECT_TRUE(reverify(v, ps, CheckConfig{}));
}

TEST(NonBossiness, Verdicts) {
  const CheckConfig c = small_grid();
  EXPECT_TRUE(check_non_bossiness(rsd_rule(), c).passed());
  EXPECT_TRUE(check_non_bossiness(uniform_rule(), c).passed());
}

TEST(NonBossiness, BossyRuleCaught) {
  // Agent 0's report decides who of 1 and 2 gets b; agent 0 always gets a.
  const Rule bossy{"bossy", [](const UtilityProfile& p) {
                     const bool flip = p[0][1] > p[0][2];
                     const std::vector<std::size_t> a{0, flip ? 1u : 2u, flip ? 2u : 1u};
                     return Allocation::from_assignment(a);
                   }};
  const CheckConfig c = small_grid();
  const Verdict v = check_non_bossiness(bossy, c);
  ASSERT_FALSE(v.passed());
  EXPECT_EQ(v.witness->agent->index, 0u);
  EXPECT_TRUE(reverify(v, bossy, c));
}

TEST(Efficiency, Verdicts) {
  const CheckConfig c = small_grid();
  const std::vector<UtilityProfile> profiles{{U({"1", "1/2", "0"}), U({"0", "1", "1/2"}), U({"1/2", "0", "1"})}};
  EXPECT_TRUE(check_efficiency(serial_dictatorship_rule(), profiles).passed());
  const Rule uniform = uniform_rule();
  const Verdict v = check_efficiency(uniform, profiles);
  ASSERT_FALSE(v.passed());
  EXPECT_TRUE(reverify(v, uniform, c));
  EXPECT_TRUE(dominates(v.witness->profile, v.witness->allocations[1], v.witness->allocations[0]));
  EXPECT_TRUE(check_efficiency(GridOutcomes(utilitarian_rule(), c), c).passed());
}

TEST(Ordinality, Verdicts) {
  const CheckConfig c;
  EXPECT_TRUE(check_ordinality(rsd_rule(), c).passed());
  EXPECT_TRUE(check_ordinality(ps_rule(), c).passed());
  const Rule util = utilitarian_rule();
  const Verdict v = check_ordinality(util, c);
  ASSERT_FALSE(v.passed());
  EXPECT_TRUE(reverify(v, util, c));
}

TEST(SdStrategyProofness, Verdicts) {
  EXPECT_TRUE(check_sd_strategy_proofness(serial_dictatorship_rule()).passed());
  EXPECT_TRUE(check_sd_strategy_proofness(rsd_rule()).passed());
  const Rule ps = ps_rule();
  const Verdict v = check_sd_strategy_proofness(ps);
  ASSERT_FALSE(v.passed());
  EXPECT_TRUE(reverify(v, ps, CheckConfig{}));
  try {
    check_sd_strategy_proofness(utilitarian_rule());
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOrdinal);
  }
}

TEST(Continuity, UtilitarianJumpIsLocalized) {
  const auto abc = OrdinalPreference::parse("a>b>c");
  const UtilityProfile base(3, grid_utility(abc, R("1/2")));
  const auto ends = std::pair{canonicalize(grid_utility(abc, R("1/10"))), canonicalize(grid_utility(abc, R("9/10")))};
  const CheckConfig c;
  const Rule util = utilitarian_rule();
  const Verdict v = check_ncc_continuity(util, AgentId{0}, base, ends, c);
  ASSERT_FALSE(v.passed());
  const auto& [lo, hi] = *v.witness->alpha_interval;
  EXPECT_LT(hi - lo, c.continuity_interval_delta);
  EXPECT_GE(*v.witness->gap, R("1/2"));
  EXPECT_TRUE(reverify(v, util, c));
  EXPECT_TRUE(check_ncc_continuity(rsd_rule(), AgentId{0}, base, ends, c).passed());
}

TEST(Continuity, EndpointsMustShareRanking) {
  const UtilityProfile base(3, grid_utility(OrdinalPreference::parse("a>b>c"), R("1/2")));
  const auto ends = std::pair{canonicalize(U({"1", "1/2", "0"})), canonicalize(U({"1/2", "1", "0"}))};
  try {
    check_ncc_continuity(rsd_rule(), AgentId{0}, base, ends, CheckConfig{});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EndpointsInDifferentCones);
  }
}

TEST(Continuity, DefaultProbes) {
  CheckConfig c;
  c.continuity_probes_per_order = 1;
  EXPECT_EQ(default_continuity_probes(c).size(), 3u * 6u * 2u);
  EXPECT_TRUE(check_continuity(ps_rule(), c).passed());
  EXPECT_FALSE(check_continuity(utilitarian_rule(), c).passed());
}

TEST(Verdicts, IndependentOfWorkerCount) {
  CheckConfig one = small_grid();
  CheckConfig many = one;
  many.workers = 4;
  const Rule util = memoize(utilitarian_rule());
  for (const Axiom a : {Axiom::StrategyProofness, Axiom::Ordinality, Axiom::Continuity}) {
    const Verdict x = check_axiom(a, util, one);
    const Verdict y = check_axiom(a, util, many);
    ASSERT_EQ(x.status, y.status);
    EXPECT_EQ(x.witness->profile, y.witness->profile);
    EXPECT_EQ(x.witness->allocations, y.witness->allocations);
  }
}

TEST(Reverify, RejectsTamperedWitness) {
  const CheckConfig c = small_grid();
  const Rule util = utilitarian_rule();
  Verdict v = check_strategy_proofness(util, c);
  ASSERT_FALSE(v.passed());
  std::swap(v.witness->allocations[0], v.witness->allocations[1]);
  EXPECT_FALSE(reverify(v, util, c));
  EXPECT_FALSE(reverify(check_strategy_proofness(rsd_rule(), c), rsd_rule(), c));
}

}  // namespace
}  // namespace ordlab
