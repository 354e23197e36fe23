#include "ordlab/axioms.hpp"

#include <chrono>
#include <sstream>

#include "ordlab/error.hpp"
#include "ordlab/lp.hpp"
#include "ordlab/parallel.hpp"
#include "ordlab/random.hpp"

namespace ordlab {

namespace {

class Stopwatch {
 public:
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Verdict make_verdict(Axiom axiom, std::string rule, std::string coverage, std::uint64_t seed) {
  Verdict v;
  v.axiom = axiom;
  v.rule = std::move(rule);
  v.coverage = std::move(coverage);
  v.seed = seed;
  return v;
}

void fail(Verdict& v, Witness w) {
  v.status = VerdictStatus::Fail;
  v.witness = std::move(w);
}

std::string values_str(const BernoulliUtility& u);

std::string profile_str(const UtilityProfile& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + values_str(p[i]);
  return s;
}

std::string values_str(const BernoulliUtility& u) {
  std::string s = "(";
  for (std::size_t a = 0; a < u.size(); ++a) s += (a ? "," : "") + u[a].str();
  return s + ")";
}

bool same_except(const UtilityProfile& x, const UtilityProfile& y, std::size_t agent) {
  if (x.size() != y.size()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j != agent && !(x[j] == y[j])) return false;
  }
  return true;
}

bool rows_equal(const Allocation& x, const Allocation& y, std::size_t agent) {
  const auto rx = x.row_span(agent);
  const auto ry = y.row_span(agent);
  return std::equal(rx.begin(), rx.end(), ry.begin(), ry.end());
}

std::string deviation_coverage(const ProfileGrid& grid) {
  std::ostringstream os;
  os << grid.profile_count() << " grid profiles x " << grid.agents() << " agents x " << grid.type_count() - 1
     << " unilateral deviations";
  return os.str();
}

}  // namespace

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::Efficiency: return "efficiency";
    case Axiom::StrategyProofness: return "strategy-proofness";
    case Axiom::SdStrategyProofness: return "sd-strategy-proofness";
    case Axiom::NonBossiness: return "non-bossiness";
    case Axiom::Ordinality: return "ordinality";
    case Axiom::Continuity: return "continuity";
  }
  return "unknown";
}

Axiom axiom_from_string(std::string_view name) {
  for (const Axiom a : {Axiom::Efficiency, Axiom::StrategyProofness, Axiom::SdStrategyProofness, Axiom::NonBossiness,
                        Axiom::Ordinality, Axiom::Continuity}) {
    if (to_string(a) == name) return a;
  }
  throw Error(ErrorCode::UsageError, "unknown axiom '" + std::string(name) + "'");
}

std::string_view to_string(VerdictStatus status) { return status == VerdictStatus::Pass ? "Pass" : "Fail"; }

std::vector<Rational> default_mu_grid() {
  return {Rational(1, 10), Rational(1, 4), Rational(2, 5), Rational(1, 2),
          Rational(3, 5),  Rational(3, 4), Rational(9, 10)};
}

void CheckConfig::validate() const {
  if (n < 3) throw Error(ErrorCode::InvalidConfig, "economy size must be at least 3");
  if (mu_grid.empty()) throw Error(ErrorCode::InvalidConfig, "mu grid is empty");
  for (const auto& mu : mu_grid) {
    if (mu.sign() <= 0 || mu >= 1) throw Error(ErrorCode::InvalidConfig, "grid value " + mu.str() + " not in (0,1)");
  }
  if (continuity_gap_tau.sign() <= 0 || continuity_interval_delta.sign() <= 0) {
    throw Error(ErrorCode::InvalidConfig, "tau and delta must be positive");
  }
  if (samples_per_cell == 0) throw Error(ErrorCode::InvalidConfig, "samples_per_cell must be at least 1");
  if (workers == 0) throw Error(ErrorCode::InvalidConfig, "workers must be at least 1");
}

std::string CheckConfig::grid_description() const {
  std::ostringstream os;
  os << "n=" << n << "; mu grid {";
  for (std::size_t k = 0; k < mu_grid.size(); ++k) os << (k ? "," : "") << mu_grid[k];
  os << "}; samples/cell=" << samples_per_cell << "; tau=" << continuity_gap_tau
     << "; delta=" << continuity_interval_delta;
  return os.str();
}

BernoulliUtility grid_utility(const OrdinalPreference& order, const Rational& mu) {
  const std::size_t m = order.size();
  std::vector<Rational> values(m);
  Rational level(1);
  for (std::size_t r = 0; r + 1 < m; ++r) {
    values[order.at_rank(r).index] = level;
    level *= mu;
  }
  values[order.worst().index] = 0;
  return canonicalize(BernoulliUtility::make(std::move(values))).as_bernoulli();
}

std::vector<BernoulliUtility> utility_types(std::size_t n, std::span<const Rational> mu_grid) {
  std::vector<BernoulliUtility> types;
  for (const auto& order : OrdinalPreference::all(n)) {
    for (const auto& mu : mu_grid) types.push_back(grid_utility(order, mu));
  }
  return types;
}

ProfileGrid::ProfileGrid(std::size_t n, std::vector<BernoulliUtility> types)
    : n_(n), types_(std::move(types)), stride_(n) {
  count_ = 1;
  for (std::size_t i = n_; i-- > 0;) {
    stride_[i] = count_;
    count_ *= types_.size();
  }
}

std::size_t ProfileGrid::type_of(std::size_t profile, std::size_t agent) const {
  return (profile / stride_[agent]) % types_.size();
}

std::size_t ProfileGrid::with_type(std::size_t profile, std::size_t agent, std::size_t type) const {
  return profile - type_of(profile, agent) * stride_[agent] + type * stride_[agent];
}

UtilityProfile ProfileGrid::profile(std::size_t index) const {
  UtilityProfile p;
  p.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) p.push_back(types_[type_of(index, i)]);
  return p;
}

GridOutcomes::GridOutcomes(const Rule& rule, const CheckConfig& config)
    : rule_name_(rule.name), grid_(config.n, utility_types(config.n, config.mu_grid)) {
  config.validate();
  std::vector<std::optional<Allocation>> slots(grid_.profile_count());
  parallel_for(slots.size(), config.workers, [&](std::size_t k) { slots[k] = rule(grid_.profile(k)); });
  outcomes_.reserve(slots.size());
  for (auto& s : slots) outcomes_.push_back(std::move(*s));
}

Verdict check_efficiency(const Rule& rule, const std::vector<UtilityProfile>& profiles, std::size_t workers) {
  Stopwatch clock;
  if (profiles.empty()) throw Error(ErrorCode::InvalidConfig, "efficiency check needs at least one profile");
  Verdict v = make_verdict(Axiom::Efficiency, rule.name, std::to_string(profiles.size()) + " profiles", 0);
  const auto hit = parallel_find_first(profiles.size(), workers, [&](std::size_t k) {
    return find_dominating(profiles[k], rule(profiles[k])).has_value();
  });
  if (hit) {
    const Allocation outcome = rule(profiles[*hit]);
    Allocation better = *find_dominating(profiles[*hit], outcome);
    Witness w;
    w.profile = profiles[*hit];
    Rational total_gain;
    for (std::size_t i = 0; i < w.profile.size(); ++i) {
      const Rational gain = expected_utility(w.profile[i].values(), better.row_span(i)) -
                            expected_utility(w.profile[i].values(), outcome.row_span(i));
      if (!w.agent && gain.sign() > 0) w.agent = AgentId{i};
      total_gain += gain;
    }
    w.gap = total_gain;
    w.summary = "allocation at " + profile_str(w.profile) + " is dominated; total utility gain " + total_gain.str();
    w.allocations = {outcome, std::move(better)};
    fail(v, std::move(w));
  }
  v.elapsed_ms = clock.elapsed_ms();
  return v;
}

Verdict check_efficiency(const GridOutcomes& outcomes, const CheckConfig& config) {
  Stopwatch clock;
  const ProfileGrid& grid = outcomes.grid();
  Verdict v = make_verdict(Axiom::Efficiency, outcomes.rule_name(),
                           std::to_string(grid.profile_count()) + " grid profiles",
                           config.seed);
  const auto hit = parallel_find_first(grid.profile_count(), config.workers, [&](std::size_t k) {
    return find_dominating(grid.profile(k), outcomes.at(k)).has_value();
  });
  if (hit) {
    const UtilityProfile p = grid.profile(*hit);
    Allocation better = *find_dominating(p, outcomes.at(*hit));
    Witness w;
    w.profile = p;
    Rational total_gain;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Rational gain = expected_utility(p[i].values(), better.row_span(i)) -
                            expected_utility(p[i].values(), outcomes.at(*hit).row_span(i));
      if (!w.agent && gain.sign() > 0) w.agent = AgentId{i};
      total_gain += gain;
    }
    w.gap = total_gain;
    w.summary = "allocation at " + profile_str(p) + " is dominated; total utility gain " + total_gain.str();
    w.allocations = {outcomes.at(*hit), std::move(better)};
    fail(v, std::move(w));
  }
  v.elapsed_ms = clock.elapsed_ms();
  return v;
}

Verdict check_strategy_proofness(const Rule& rule, const CheckConfig& config) {
  Stopwatch clock;
  const GridOutcomes outcomes(rule, config);
  Verdict v = check_strategy_proofness(outcomes, config);
  v.elapsed_ms = clock.elapsed_ms();
  return v;
}

Verdict check_strategy_proofness(const GridOutcomes& outcomes, const CheckConfig& config) {
  Stopwatch clock;
  const ProfileGrid& grid = outcomes.grid();
  Verdict v = make_verdict(Axiom::StrategyProofness, outcomes.rule_name(),
                           deviation_coverage(grid), config.seed);

  struct Violation {
    std::size_t agent;
    std::size_t deviated;
    Rational gap;
  };
  auto first_violation = [&](std::size_t k) -> std::optional<Violation> {
    for (std::size_t i = 0; i < grid.agents(); ++i) {
      const auto& u = grid.types()[grid.type_of(k, i)].values();
      const Rational truthful = expected_utility(u, outcomes.at(k).row_span(i));
      for (std::size_t t = 0; t < grid.type_count(); ++t) {
        if (t == grid.type_of(k, i)) continue;
        const std::size_t d = grid.with_type(k, i, t);
        Rational gap = expected_utility(u, outcomes.at(d).row_span(i)) - truthful;
        if (gap.sign() > 0) return Violation{i, d, std::move(gap)};
      }
    }
    return std::nullopt;
  };
  const auto hit = parallel_find_first(grid.profile_count(), config.workers,
                                       [&](std::size_t k) { return first_violation(k).has_value(); });
  if (hit) {
    const Violation found = *first_violation(*hit);
    Witness w;
    w.profile = grid.profile(*hit);
    w.alternate_profile = grid.profile(found.deviated);
    w.agent = AgentId{found.agent};
    w.allocations = {outcomes.at(*hit), outcomes.at(found.deviated)};
    w.gap = found.gap;
    w.summary = "agent " + std::to_string(found.agent) + " gains " + found.gap.str() + " by misreporting at " +
                profile_str(w.profile);
    fail(v, std::move(w));
  }
  v.elapsed_ms = clock.elapsed_ms();
  return v;
}

Verdict check_non_bossiness(const Rule& rule, const CheckConfig& config) {
  Stopwatch clock;
  const GridOutcomes outcomes(rule, config);
  Verdict v = check_non_bossiness(outcomes, config);
  v.elapsed_ms = clock.elapsed_ms();
  return v;
}

Verdict check_non_bossiness(const GridOutcomes& outcomes, const CheckConfig& config) {
  Stopwatch clock;
  const ProfileGrid& grid = outcomes.grid();
  Verdict v = make_verdict(Axiom::NonBossiness, outcomes.rule_name(),
                           deviation_coverage(grid), config.seed);
  auto first_violation = [&](std::size_t k) -> std::optional<std::pair<std::size_t, std::size_t>> {
    for (std::size_t i = 0; i < grid.agents(); ++i) {
      for (std::size_t t = 0; t < grid.type_count(); ++t) {
        if (t == grid.type_of(k, i)) continue;
        const std::size_t d = grid.with_type(k, i, t);
        if (rows_equal(outcomes.at(k), outcomes.at(d), i) && !(outcomes.at(k) == outcomes.at(d))) {
          return std::pair{i, d};
        }
      }
    }
    return std::nullopt;
  };
  const auto hit = parallel_find_first(grid.profile_count(), config.workers,
                                       [&](std::size_t k) { return first_violation(k).has_value(); });
  if (hit) {
    const auto [agent, deviated] = *first_violation(*hit);
    Witness w;
    w.profile = grid.profile(*hit);
    w.alternate_profile = grid.profile(deviated);
    w.agent = AgentId{agent};
    w.allocations = {outcomes.at(*hit), outcomes.at(deviated)};
    w.gap = max_entry_distance(outcomes.at(*hit), outcomes.at(deviated));
    w.summary = "agent " + std::to_string(agent) + " keeps their lottery but changes others' at " +
                profile_str(w.profile);
    fail(v, std::move(w));
  }
  v.elapsed_ms = clock.elapsed_ms();
  return v;
}

Verdict check_ordinality(const Rule& rule, const CheckConfig& config) {
  Stopwatch clock;
  config.validate();
  const auto orders = OrdinalPreference::all(config.n);
  std::size_t cells = 1;
  for (std::size_t i = 0; i < config.n; ++i) cells *= orders.size();
  Verdict v = make_verdict(Axiom::Ordinality, rule.name,
                           std::to_string(cells) + " ordinal cells x " + std::to_string(config.samples_per_cell) +
                               " profiles",
                           config.seed);
  const std::vector<Rational>& grid = config.mu_grid;

  auto cell_sample = [&](std::size_t cell, std::size_t s, Rng& rng) {
    UtilityProfile p;
    std::size_t rest = cell;
    std::vector<std::size_t> order_index(config.n);
    for (std::size_t i = config.n; i-- > 0;) {
      order_index[i] = rest % orders.size();
      rest /= orders.size();
    }
    for (std::size_t i = 0; i < config.n; ++i) {
      const auto& order = orders[order_index[i]];
      if (s == 0) {
        p.push_back(grid_utility(order, grid[i % grid.size()]));
      } else if (s == 1) {
        p.push_back(grid_utility(order, grid[grid.size() - 1 - i % grid.size()]));
      } else {
        p.push_back(random_affine(rng, grid_utility(order, random_mu(rng, grid))));
      }
    }
    return p;
  };

  struct Pair {
    UtilityProfile first;
    UtilityProfile second;
    Allocation a;
    Allocation b;
  };
  auto violation = [&](std::size_t cell) -> std::optional<Pair> {
    Rng rng = Rng::stream(config.seed, cell);
    UtilityProfile reference = cell_sample(cell, 0, rng);
    Allocation expected = rule(reference);
    for (std::size_t s = 1; s < config.samples_per_cell; ++s) {
      UtilityProfile p = cell_sample(cell, s, rng);
      Allocation got = rule(p);
      if (!(got == expected)) return Pair{std::move(reference), std::move(p), std::move(expected), std::move(got)};
    }
    return std::nullopt;
  };
  const auto hit =
      parallel_find_first(cells, config.workers, [&](std::size_t c) { return violation(c).has_value(); });
  if (hit) {
    Pair found = *violation(*hit);
    Witness w;
    w.profile = std::move(found.first);
    w.alternate_profile = std::move(found.second);
    w.gap = max_entry_distance(found.a, found.b);
    w.allocations = {std::move(found.a), std::move(found.b)};
    w.summary = "same ordinal cell, different allocations: " + profile_str(w.profile) + " vs " +
                profile_str(*w.alternate_profile);
    fail(v, std::move(w));
  }
  v.elapsed_ms = clock.elapsed_ms();
  return v;
}

Verdict check_sd_strategy_proofness(const Rule& rule, const CheckConfig& config) {
  Stopwatch clock;
  const Verdict ordinal = check_ordinality(rule, config);
  if (!ordinal.passed()) {
    throw Error(ErrorCode::NotOrdinal, rule.name + " varies within an ordinal cell: " + ordinal.witness->summary);
  }
  CheckConfig ordinal_grid = config;
  ordinal_grid.mu_grid = {Rational(1, 2)};
  const GridOutcomes outcomes(rule, ordinal_grid);
  const ProfileGrid& grid = outcomes.grid();
  const auto orders = OrdinalPreference::all(config.n);
  Verdict v = make_verdict(Axiom::SdStrategyProofness, rule.name,
                           std::to_string(grid.profile_count()) + " ordinal profiles x " +
                               std::to_string(grid.agents()) + " agents x " + std::to_string(orders.size() - 1) +
                               " ordinal deviations",
                           config.seed);
  auto first_violation = [&](std::size_t k) -> std::optional<std::pair<std::size_t, std::size_t>> {
    for (std::size_t i = 0; i < grid.agents(); ++i) {
      const auto& truth = orders[grid.type_of(k, i)];
      const Lottery honest = outcomes.at(k).row(i);
      for (std::size_t t = 0; t < grid.type_count(); ++t) {
        if (t == grid.type_of(k, i)) continue;
        const std::size_t d = grid.with_type(k, i, t);
        if (!sd_weakly_dominates(honest, outcomes.at(d).row(i), truth)) return std::pair{i, d};
      }
    }
    return std::nullopt;
  };
  const auto hit = parallel_find_first(grid.profile_count(), config.workers,
                                       [&](std::size_t k) { return first_violation(k).has_value(); });
  if (hit) {
    const auto [agent, deviated] = *first_violation(*hit);
    Witness w;
    w.profile = grid.profile(*hit);
    w.alternate_profile = grid.profile(deviated);
    w.agent = AgentId{agent};
    w.allocations = {outcomes.at(*hit), outcomes.at(deviated)};
    const auto verdict = sd_compare(outcomes.at(*hit).row(agent), outcomes.at(deviated).row(agent),
                                    orders[grid.type_of(*hit, agent)]);
    w.summary = "truthful share of agent " + std::to_string(agent) + " is " + std::string(to_string(verdict)) +
                " against a misreport at " + profile_str(w.profile);
    fail(v, std::move(w));
  }
  v.elapsed_ms = clock.elapsed_ms();
  return v;
}

namespace {

UtilityProfile on_path(const UtilityProfile& base, std::size_t agent, const NormalizedUtility& end0,
                       const NormalizedUtility& end1, const Rational& alpha) {
  std::vector<Rational> values(end0.size());
  const Rational beta = Rational(1) - alpha;
  for (std::size_t a = 0; a < values.size(); ++a) values[a] = alpha * end1[a] + beta * end0[a];
  UtilityProfile p = base;
  p[agent] = BernoulliUtility::make(std::move(values));
  return p;
}

}  // namespace

Verdict check_ncc_continuity(const Rule& rule, AgentId agent, const UtilityProfile& base,
                             const std::pair<NormalizedUtility, NormalizedUtility>& endpoints,
                             const CheckConfig& config) {
  Stopwatch clock;
  config.validate();
  const auto& [end0, end1] = endpoints;
  if (agent.index >= base.size() || end0.size() != base.size() || end1.size() != base.size()) {
    throw Error(ErrorCode::DimensionMismatch, "continuity path does not match the profile");
  }
  if (ordinal_of(end0.as_bernoulli()) != ordinal_of(end1.as_bernoulli())) {
    throw Error(ErrorCode::EndpointsInDifferentCones, "path endpoints rank the objects differently");
  }
  Verdict v = make_verdict(Axiom::Continuity, rule.name, "", config.seed);

  constexpr long kInitialPieces = 64;
  std::size_t evaluations = 0;
  auto eval = [&](const Rational& alpha) {
    ++evaluations;
    return rule(on_path(base, agent.index, end0, end1, alpha));
  };

  struct Point {
    Rational alpha;
    Allocation outcome;
  };
  std::vector<Point> probes;
  for (long k = 0; k <= kInitialPieces; ++k) {
    Rational alpha(k, kInitialPieces);
    Allocation out = eval(alpha);
    probes.push_back(Point{std::move(alpha), std::move(out)});
  }

  bool truncated = false;
  std::optional<std::pair<Point, Point>> jump;
  // Depth-first in increasing alpha, so the reported jump is the leftmost.
  auto localize = [&](auto&& self, const Point& lo, const Point& hi) -> void {
    if (jump || truncated) return;
    if (max_entry_distance(lo.outcome, hi.outcome) < config.continuity_gap_tau) return;
    if (hi.alpha - lo.alpha < config.continuity_interval_delta) {
      jump = std::pair{lo, hi};
      return;
    }
    if (evaluations >= config.continuity_max_evaluations) {
      truncated = true;
      return;
    }
    Rational mid = (lo.alpha + hi.alpha) / Rational(2);
    Allocation out = eval(mid);
    const Point middle{std::move(mid), std::move(out)};
    self(self, lo, middle);
    self(self, middle, hi);
  };
  for (std::size_t k = 0; k + 1 < probes.size(); ++k) localize(localize, probes[k], probes[k + 1]);

  std::ostringstream coverage;
  coverage << "agent " << agent.index << " path " << ordinal_of(end0.as_bernoulli()).str() << " from "
           << values_str(end0.as_bernoulli()) << " to " << values_str(end1.as_bernoulli()) << "; " << evaluations
           << " evaluations" << (truncated ? " (evaluation budget exhausted)" : "") << "; tau=" << config.continuity_gap_tau
           << ", delta=" << config.continuity_interval_delta;
  v.coverage = coverage.str();

  if (jump) {
    Witness w;
    w.agent = agent;
    w.profile = on_path(base, agent.index, end0, end1, jump->first.alpha);
    w.alternate_profile = on_path(base, agent.index, end0, end1, jump->second.alpha);
    w.alpha_interval = std::pair{jump->first.alpha, jump->second.alpha};
    w.gap = max_entry_distance(jump->first.outcome, jump->second.outcome);
    w.allocations = {jump->first.outcome, jump->second.outcome};
    w.summary = "jump of " + w.gap->str() + " between alpha " + jump->first.alpha.str() + " and " +
                jump->second.alpha.str();
    fail(v, std::move(w));
  }
  v.elapsed_ms = clock.elapsed_ms();
  return v;
}

std::vector<ContinuityProbe> default_continuity_probes(const CheckConfig& config) {
  config.validate();
  const auto& grid = config.mu_grid;
  const auto orders = OrdinalPreference::all(config.n);
  std::vector<ContinuityProbe> probes;
  std::size_t stream = 0;
  for (std::size_t i = 0; i < config.n; ++i) {
    for (const auto& order : orders) {
      NormalizedUtility end0 = canonicalize(grid_utility(order, grid.front()));
      NormalizedUtility end1 = canonicalize(grid_utility(order, grid.back()));
      UtilityProfile shared(config.n, grid_utility(order, grid[grid.size() / 2]));
      shared[i] = end0.as_bernoulli();
      probes.push_back(ContinuityProbe{AgentId{i}, std::move(shared), end0, end1});
      for (std::size_t r = 0; r < config.continuity_probes_per_order; ++r) {
        Rng rng = Rng::stream(config.seed, stream++);
        UtilityProfile base;
        for (std::size_t j = 0; j < config.n; ++j) {
          if (j == i) {
            base.push_back(end0.as_bernoulli());
          } else {
            base.push_back(grid_utility(orders[rng.below(orders.size())], random_mu(rng, grid)));
          }
        }
        probes.push_back(ContinuityProbe{AgentId{i}, std::move(base), end0, end1});
      }
    }
  }
  return probes;
}

Verdict check_continuity(const Rule& rule, const CheckConfig& config) {
  Stopwatch clock;
  const auto probes = default_continuity_probes(config);
  std::vector<std::optional<Verdict>> results(probes.size());
  const auto hit = parallel_find_first(probes.size(), config.workers, [&](std::size_t k) {
    const auto& p = probes[k];
    return !check_ncc_continuity(rule, p.agent, p.base, {p.end0, p.end1}, config).passed();
  });
  Verdict v = make_verdict(Axiom::Continuity, rule.name,
                           std::to_string(probes.size()) + " same-ranking paths",
                           config.seed);
  if (hit) {
    const auto& p = probes[*hit];
    Verdict first = check_ncc_continuity(rule, p.agent, p.base, {p.end0, p.end1}, config);
    v.status = VerdictStatus::Fail;
    v.witness = std::move(first.witness);
    v.coverage = "failed on path " + std::to_string(*hit + 1) + " of " + std::to_string(probes.size()) + ": " +
                 first.coverage;
  }
  v.elapsed_ms = clock.elapsed_ms();
  return v;
}

Verdict check_axiom(Axiom axiom, const Rule& rule, const CheckConfig& config) {
  switch (axiom) {
    case Axiom::Efficiency: {
      Stopwatch clock;
      Verdict v = check_efficiency(GridOutcomes(rule, config), config);
      v.elapsed_ms = clock.elapsed_ms();
      return v;
    }
    case Axiom::StrategyProofness: return check_strategy_proofness(rule, config);
    case Axiom::SdStrategyProofness: return check_sd_strategy_proofness(rule, config);
    case Axiom::NonBossiness: return check_non_bossiness(rule, config);
    case Axiom::Ordinality: return check_ordinality(rule, config);
    case Axiom::Continuity: return check_continuity(rule, config);
  }
  throw Error(ErrorCode::UsageError, "unknown axiom");
}

bool reverify(const Verdict& verdict, const Rule& rule, const CheckConfig& config) {
  if (verdict.passed() || !verdict.witness) return false;
  const Witness& w = *verdict.witness;
  if (w.allocations.size() != 2) return false;
  const Allocation at_profile = rule(w.profile);
  if (!(at_profile == w.allocations[0])) return false;

  if (verdict.axiom == Axiom::Efficiency) {
    return dominates(w.profile, w.allocations[1], at_profile);
  }
  if (!w.alternate_profile) return false;
  const UtilityProfile& alt = *w.alternate_profile;
  const Allocation at_alt = rule(alt);
  if (!(at_alt == w.allocations[1])) return false;

  switch (verdict.axiom) {
    case Axiom::StrategyProofness: {
      if (!w.agent || !same_except(w.profile, alt, w.agent->index)) return false;
      const auto& u = w.profile[w.agent->index].values();
      return expected_utility(u, at_alt.row_span(w.agent->index)) >
             expected_utility(u, at_profile.row_span(w.agent->index));
    }
    case Axiom::SdStrategyProofness: {
      if (!w.agent || !same_except(w.profile, alt, w.agent->index)) return false;
      const auto truth = ordinal_of(w.profile[w.agent->index]);
      return !sd_weakly_dominates(at_profile.row(w.agent->index), at_alt.row(w.agent->index), truth);
    }
    case Axiom::NonBossiness:
      if (!w.agent || !same_except(w.profile, alt, w.agent->index)) return false;
      return rows_equal(at_profile, at_alt, w.agent->index) && !(at_profile == at_alt);
    case Axiom::Ordinality:
      if (alt.size() != w.profile.size()) return false;
      for (std::size_t i = 0; i < alt.size(); ++i) {
        if (ordinal_of(alt[i]) != ordinal_of(w.profile[i])) return false;
      }
      return !(at_profile == at_alt);
    case Axiom::Continuity: {
      if (!w.agent || !w.alpha_interval || !same_except(w.profile, alt, w.agent->index)) return false;
      if (ordinal_of(alt[w.agent->index]) != ordinal_of(w.profile[w.agent->index])) return false;
      const auto& [lo, hi] = *w.alpha_interval;
      return lo < hi && hi - lo < config.continuity_interval_delta &&
             max_entry_distance(at_profile, at_alt) >= config.continuity_gap_tau;
    }
    case Axiom::Efficiency: break;
  }
  return false;
}

}  // namespace ordlab
