// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "ordlab/axioms.hpp"
#include "ordlab/bvn.hpp"
#include "ordlab/harness.hpp"
#include "ordlab/lp.hpp"
#include "ordlab/random.hpp"
#include "ordlab/rules.hpp"

namespace {

using namespace ordlab;

struct Result {
  bool pass = true;
  std::string detail;
};

class Clock {
 public:
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }
  std::int64_t us() const {
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Utilities computed here rather than through the library.
std::vector<Rational> utilities(const UtilityProfile& profile, const Allocation& x) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    Rational s;
    for (std::size_t a = 0; a < x.size(); ++a) s += profile[i][a] * x.at(i, a);
    out.push_back(s);
  }
  return out;
}

bool pareto_better(const std::vector<Rational>& y, const std::vector<Rational>& x) {
  bool strict = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] < x[i]) return false;
    strict = strict || y[i] > x[i];
  }
  return strict;
}

std::vector<Rational> normalized(const BernoulliUtility& u) {
  Rational lo = u[0];
  for (const auto& x : u.values()) lo = std::min(lo, x);
  Rational sum;
  for (const auto& x : u.values()) sum += x - lo;
  std::vector<Rational> out;
  for (const auto& x : u.values()) out.push_back((x - lo) / sum);
  return out;
}

std::vector<std::vector<std::size_t>> permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> all;
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return all;
}

UtilityProfile random_profile(Rng& rng) {
  const auto orders = OrdinalPreference::all(3);
  UtilityProfile p;
  for (int i = 0; i < 3; ++i) p.push_back(random_affine(rng, grid_utility(orders[rng.below(6)], random_mu(rng, default_mu_grid()))));
  return p;
}

Result bvn_round_trip() {
  Clock clock;
  Rng rng(1);
  std::size_t max_terms = 0;
  for (int k = 0; k < 1000; ++k) {
    const Allocation x = random_bistochastic(rng, 3, 1 + rng.below(8), 1 + static_cast<long>(rng.below(120)));
    const Decomposition d = decompose(x);
    Rational total;
    for (const auto& t : d.terms) {
      if (t.weight <= Rational(0)) return {false, "non-positive weight at matrix " + std::to_string(k)};
      total += t.weight;
    }
    if (d.terms.size() > 5) return {false, std::to_string(d.terms.size()) + " terms at matrix " + std::to_string(k)};
    if (total != Rational(1)) return {false, "weights sum to " + total.str()};
    if (!(recompose(d) == x)) return {false, "recomposition differs at matrix " + std::to_string(k)};
    max_terms = std::max(max_terms, d.terms.size());
  }
  const auto ms = clock.ms();
  return {ms < 5000, "1000 matrices, at most " + std::to_string(max_terms) + " terms, " + std::to_string(ms) + " ms"};
}

Result efficiency_oracle() {
  Clock clock;
  Rng rng(2);
  const auto perms = permutations(3);
  std::size_t some = 0, none = 0, search_hits = 0;
  const Rule util = utilitarian_rule();
  for (int k = 0; k < 200; ++k) {
    const UtilityProfile profile = random_profile(rng);
    Allocation x = Allocation::identity(3);
    switch (k % 4) {
      case 0:
      case 1: x = random_bistochastic(rng, 3, 1 + rng.below(4), 12); break;
      case 2: x = util(profile); break;
      default: x = Allocation::from_assignment(perms[rng.below(perms.size())]); break;
    }
    const auto base = utilities(profile, x);
    const auto found = find_dominating(profile, x);
    if (found) {
      ++some;
      if (!pareto_better(utilities(profile, *found), base)) {
        return {false, "returned dominator fails the definition at pair " + std::to_string(k)};
      }
    } else {
      ++none;
    }

    // Random search over mixtures of x and the permutation matrices, which
    // together span the whole polytope.
    std::vector<std::vector<Rational>> vertex{base};
    for (const auto& p : perms) vertex.push_back(utilities(profile, Allocation::from_assignment(p)));
    bool hit = false;
    for (int s = 0; s < 10000 && !hit; ++s) {
      const Lottery w = random_lottery(rng, vertex.size(), 40);
      std::vector<Rational> mixed(3);
      for (std::size_t v = 0; v < vertex.size(); ++v) {
        if (w[v].is_zero()) continue;
        for (std::size_t i = 0; i < 3; ++i) mixed[i] += w[v] * vertex[v][i];
      }
      hit = pareto_better(mixed, base);
    }
    if (hit) {
      ++search_hits;
      if (!found) return {false, "random search dominates an allocation judged efficient at pair " + std::to_string(k)};
    }
  }
  const bool informative = some > 0 && none > 0;
  return {informative, "200 pairs: " + std::to_string(some) + " dominated, " + std::to_string(none) +
                           " efficient, random search hits " + std::to_string(search_hits) + ", no contradiction, " +
                           std::to_string(clock.ms()) + " ms"};
}

Result opposed_pair() {
  // Agents 1 and 2 rank a and b oppositely; agent 3 holds c, their favourite.
  const UtilityProfile profile{BernoulliUtility::make({Rational(1), Rational(1, 2), Rational(0)}),
                               BernoulliUtility::make({Rational(1, 2), Rational(1), Rational(0)}),
                               BernoulliUtility::make({Rational(1, 2), Rational(0), Rational(1)})};
  const std::vector<std::size_t> crossed{1, 0, 2};
  const std::vector<std::size_t> swapped{0, 1, 2};
  find_dominating(profile, Allocation::from_assignment(crossed));
  Clock clock;
  const auto better = find_dominating(profile, Allocation::from_assignment(crossed));
  const auto us = clock.us();
  if (!better) return {false, "crossed allocation not flagged"};
  if (!(*better == Allocation::from_assignment(swapped))) return {false, "returned allocation is not the swap"};
  return {us < 10000, "swap returned exactly in " + std::to_string(us) + " us"};
}

Result axiom_matrix() {
  Clock clock;
  const CheckConfig config;
  std::vector<std::string> problems;
  std::vector<std::string> summary;

  auto expect = [&](const Verdict& v, bool want_pass, const Rule& rule) {
    const std::string tag = rule.name + "/" + std::string(to_string(v.axiom));
    summary.push_back(tag + "=" + std::string(to_string(v.status)));
    if (v.passed() != want_pass) problems.push_back(tag + " " + std::string(to_string(v.status)));
    if (!v.passed() && !reverify(v, rule, config)) problems.push_back(tag + " witness does not re-verify");
  };

  {
    const Rule rsd = memoize(rsd_rule());
    const GridOutcomes grid(rsd, config);
    expect(check_strategy_proofness(grid, config), true, rsd);
    expect(check_non_bossiness(grid, config), true, rsd);
    expect(check_ordinality(rsd, config), true, rsd);
    expect(check_continuity(rsd, config), true, rsd);
  }
  {
    const Rule util = memoize(utilitarian_rule());
    const GridOutcomes grid(util, config);
    expect(check_efficiency(grid, config), true, util);
    expect(check_strategy_proofness(grid, config), false, util);
    expect(check_ordinality(util, config), false, util);
    expect(check_continuity(util, config), false, util);
  }
  {
    const Rule uniform = memoize(uniform_rule());
    const GridOutcomes grid(uniform, config);
    expect(check_efficiency(grid, config), false, uniform);
    expect(check_strategy_proofness(grid, config), true, uniform);
    expect(check_non_bossiness(grid, config), true, uniform);
    expect(check_ordinality(uniform, config), true, uniform);
    expect(check_continuity(uniform, config), true, uniform);
  }
  const auto ms = clock.ms();
  if (ms >= 10 * 60 * 1000) problems.push_back("runtime " + std::to_string(ms) + " ms");
  std::string detail = std::to_string(summary.size()) + " verdicts as expected over 74088 profiles, " +
                       std::to_string(ms / 1000) + " s";
  if (!problems.empty()) {
    detail.clear();
    for (const auto& p : problems) detail += (detail.empty() ? "" : "; ") + p;
  }
  return {problems.empty(), detail};
}

Result metamorphic_invariant() {
  Clock clock;
  CheckConfig config;
  config.seed = 1;
  const StressReport report = theorem_stress(builtin_family(config.seed), config);
  std::size_t non_ordinal = 0;
  for (const auto& r : report.results) {
    if (!r.ordinality.passed()) ++non_ordinal;
  }
  std::string detail = std::to_string(report.results.size()) + " rules, " + std::to_string(non_ordinal) +
                       " non-ordinal (each failing an axiom), violations: " +
                       std::to_string(report.metamorphic_violations.size()) + ", " +
                       std::to_string(clock.ms() / 1000) + " s";
  for (const auto& name : report.metamorphic_violations) detail += " " + name;
  return {report.asserted && report.metamorphic_violations.empty() && non_ordinal > 0, detail};
}

Result lemma_suite() {
  Clock clock;
  const CheckConfig config;
  std::vector<Rule> rules{memoize(rsd_rule()), memoize(serial_dictatorship_rule())};
  for (const Rule& rule : rules) {
    const GridOutcomes grid(rule, config);
    if (!check_strategy_proofness(grid, config).passed() || !check_non_bossiness(grid, config).passed() ||
        !check_continuity(rule, config).passed()) {
      return {false, rule.name + " does not meet the lemma hypotheses"};
    }
  }
  std::size_t reports = 0;
  for (const std::uint64_t seed : {1u, 2u, 3u}) {
    for (const Rule& rule : rules) {
      for (const LemmaId id : {LemmaId::L1_effectively_same, LemmaId::L2_middle_bump, LemmaId::L4_top_or_bottom}) {
        const LemmaReport r = verify_lemma(id, rule, 500, seed);
        ++reports;
        if (!r.failures.empty() || r.accepted != 500) {
          return {false, std::string(to_string(id)) + " " + rule.name + " seed " + std::to_string(seed) + ": " +
                             std::to_string(r.failures.size()) + " failures, " + std::to_string(r.accepted) +
                             " accepted"};
        }
      }
    }
    const LemmaReport l10 = verify_lemma(LemmaId::L10_separating, rules[0], 500, seed);
    ++reports;
    if (!l10.failures.empty() || l10.accepted != 500) return {false, "L10 seed " + std::to_string(seed)};
  }

  // Rank-dependent members only, checked with locally computed expected utilities.
  Rng rng(6);
  const auto orders = OrdinalPreference::all(3);
  std::size_t rdu_trials = 0;
  while (rdu_trials < 500) {
    const auto& order = orders[rng.below(6)];
    const auto base = grid_utility(order, random_mu(rng, default_mu_grid()));
    const VUtility v = rdu_utility(order, base, 2 + static_cast<unsigned>(rng.below(2)));
    const Lottery p1 = random_lottery(rng, 3, 12);
    const Lottery p2 = random_lottery(rng, 3, 12);
    if (sd_weakly_dominates(p2, p1, order)) continue;
    ++rdu_trials;
    const BernoulliUtility u1 = separating_utility(v, p1, p2);
    Rational e1, e2;
    for (std::size_t a = 0; a < 3; ++a) {
      e1 += u1[a] * p1[a];
      e2 += u1[a] * p2[a];
    }
    if (!(ordinal_of(u1) == order) || e1 <= e2) return {false, "rank-dependent separation fails for " + v.name()};
  }
  return {true, std::to_string(reports) + " lemma reports x 500 trials, 0 failures; plus 500 rank-dependent "
                "separations; " + std::to_string(clock.ms() / 1000) + " s"};
}

Result ordinality_witness() {
  const auto abc = OrdinalPreference::parse("a>b>c");
  const std::vector<Rational> rising{Rational(1, 10), Rational(1, 2), Rational(9, 10)};
  auto profile_of = [&](bool reversed) {
    UtilityProfile p;
    for (std::size_t i = 0; i < 3; ++i) p.push_back(grid_utility(abc, rising[reversed ? 2 - i : i]));
    return p;
  };
  const Rule util = utilitarian_rule();
  const UtilityProfile first = profile_of(false);
  const UtilityProfile second = profile_of(true);
  const Allocation x = util(first);
  const Allocation y = util(second);
  if (x == y) return {false, "same allocation in both profiles"};

  const auto perms = permutations(3);
  auto oracle = [&](const UtilityProfile& p) {
    std::vector<std::vector<Rational>> norm;
    for (const auto& u : p) norm.push_back(normalized(u));
    std::size_t best = 0, ties = 0;
    Rational best_value;
    for (std::size_t k = 0; k < perms.size(); ++k) {
      Rational total;
      for (std::size_t i = 0; i < 3; ++i) total += norm[i][perms[k][i]];
      if (k == 0 || total > best_value) {
        best = k;
        best_value = total;
        ties = 1;
      } else if (total == best_value) {
        ++ties;
      }
    }
    return std::pair{perms[best], ties};
  };
  const auto [ox, tx] = oracle(first);
  const auto [oy, ty] = oracle(second);
  if (tx != 1 || ty != 1) return {false, "oracle optimum not unique"};
  if (!(x == Allocation::from_assignment(ox)) || !(y == Allocation::from_assignment(oy))) {
    return {false, "allocations disagree with the enumeration oracle"};
  }
  auto holder_of_b = [](const std::vector<std::size_t>& assignment) {
    return static_cast<std::size_t>(std::find(assignment.begin(), assignment.end(), 1u) - assignment.begin());
  };
  const std::size_t b1 = holder_of_b(ox);
  const std::size_t b2 = holder_of_b(oy);
  if (b1 == b2) return {false, "object b does not change hands"};
  return {true, "b goes to agent " + std::to_string(b1 + 1) + " then agent " + std::to_string(b2 + 1) +
                    ", matching the 6-permutation oracle"};
}

Result continuity_localization() {
  const auto abc = OrdinalPreference::parse("a>b>c");
  const UtilityProfile base(3, grid_utility(abc, Rational(1, 2)));
  const auto ends = std::pair{canonicalize(grid_utility(abc, Rational(1, 10))), canonicalize(grid_utility(abc, Rational(9, 10)))};
  const CheckConfig config;
  const Rule util = utilitarian_rule();
  const Verdict v = check_ncc_continuity(util, AgentId{0}, base, ends, config);
  if (v.passed()) return {false, "no jump found for utilitarian"};
  const auto& [lo, hi] = *v.witness->alpha_interval;
  const Rational width = hi - lo;
  if (!(width < inverse_power_of_ten(9))) return {false, "interval width " + width.str()};
  if (*v.witness->gap < Rational(1, 2)) return {false, "gap " + v.witness->gap->str()};
  if (!reverify(v, util, config)) return {false, "witness does not re-verify"};
  const Verdict rsd = check_ncc_continuity(rsd_rule(), AgentId{0}, base, ends, config);
  if (!rsd.passed()) return {false, "rsd jumps on the same path"};
  return {true, "gap " + v.witness->gap->str() + " within alpha-width " + width.str() + "; rsd passes"};
}

Result exactness() {
  const std::filesystem::path root = ORDLAB_CORE_DIR;
  const std::regex banned(R"(\b(double|float)\b|epsilon|\b1e-|<cmath>|\bfabs\b|std::abs\()");
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    const auto ext = entry.path().extension();
    if (ext != ".cpp" && ext != ".hpp") continue;
    ++files;
    std::ifstream in(entry.path());
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
      if (std::regex_search(line, banned)) {
        return {false, entry.path().filename().string() + ":" + std::to_string(n) + ": " + line};
      }
    }
  }
  return {files > 0, std::to_string(files) + " library sources free of floating-point types and tolerances"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"BvN round trip", bvn_round_trip},
      {"efficiency oracle agreement", efficiency_oracle},
      {"opposed-ranking swap", opposed_pair},
      {"rule axiom matrix", axiom_matrix},
      {"metamorphic invariant", metamorphic_invariant},
      {"lemma suite", lemma_suite},
      {"utilitarian ordinality witness", ordinality_witness},
      {"continuity localization", continuity_localization},
      {"exactness", exactness},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Result r;
    try {
      r = criteria[k].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failed += r.pass ? 0 : 1;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << k + 1 << ". " << criteria[k].first << ": " << r.detail
              << std::endl;
  }
  return failed;
}
