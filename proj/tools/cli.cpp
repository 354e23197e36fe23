#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ordlab/bvn.hpp"
#include "ordlab/error.hpp"
#include "ordlab/harness.hpp"
#include "ordlab/profile_io.hpp"
#include "ordlab/rules.hpp"
#include "ordlab/serialize.hpp"

namespace ordlab::cli {

namespace {

const std::vector<Axiom> kDefaultAxioms{Axiom::Efficiency, Axiom::StrategyProofness, Axiom::NonBossiness,
                                        Axiom::Continuity, Axiom::Ordinality};

// Errors that describe the rule under test rather than the invocation.
bool is_finding(ErrorCode code) {
  return code == ErrorCode::NotOrdinal || code == ErrorCode::NotOrdinalOnU || code == ErrorCode::InvalidVDomain;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

Json one_or_many(std::vector<Json> items) {
  if (items.size() == 1) return std::move(items.front());
  Json arr = Json::array();
  for (auto& j : items) arr.push_back(std::move(j));
  return arr;
}

struct Output {
  std::string text;
  int code = kExitPass;
};

void require_seed(const RunConfig& config) {
  if (!config.seed) throw Error(ErrorCode::UsageError, "--seed is required for this command");
}

std::vector<Rule> rules_of(const RunConfig& config) {
  std::vector<Rule> rules;
  for (const auto& name : config.rules) rules.push_back(memoize(rule_by_name(name)));
  return rules;
}

Output run_check(const RunConfig& config) {
  require_seed(config);
  if (config.rules.empty()) throw Error(ErrorCode::UsageError, "check needs at least one --rule");
  std::vector<Axiom> axioms;
  for (const auto& name : config.axioms) axioms.push_back(axiom_from_string(name));
  if (axioms.empty()) axioms = kDefaultAxioms;

  std::optional<std::vector<UtilityProfile>> profiles;
  if (config.profiles) {
    const std::string& spec = *config.profiles;
    profiles = spec.rfind("grid", 0) == 0 || spec.rfind("random:", 0) == 0 ? generate_profiles(spec, config.check)
                                                                           : parse_profile_file(spec);
  }

  std::vector<Verdict> verdicts;
  for (const Rule& rule : rules_of(config)) {
    std::optional<GridOutcomes> outcomes;
    auto grid = [&]() -> const GridOutcomes& {
      if (!outcomes) outcomes.emplace(rule, config.check);
      return *outcomes;
    };
    for (const Axiom axiom : axioms) {
      switch (axiom) {
        case Axiom::Efficiency:
          verdicts.push_back(profiles ? check_efficiency(rule, *profiles, config.check.workers)
                                      : check_efficiency(grid(), config.check));
          verdicts.back().seed = config.check.seed;
          break;
        case Axiom::StrategyProofness: verdicts.push_back(check_strategy_proofness(grid(), config.check)); break;
        case Axiom::NonBossiness: verdicts.push_back(check_non_bossiness(grid(), config.check)); break;
        default: verdicts.push_back(check_axiom(axiom, rule, config.check)); break;
      }
    }
  }

  Output result;
  const bool exploring = config.check.n > 3;
  const bool all_pass = std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed(); });
  result.code = all_pass || exploring ? kExitPass : kExitFail;
  if (config.format == Format::Csv) {
    result.text = verdicts_csv(verdicts);
  } else {
    std::vector<Json> items;
    for (const auto& v : verdicts) items.push_back(to_json(v, config.check.grid_description(), config.timing));
    result.text = render(one_or_many(std::move(items)));
  }
  return result;
}

Output run_decompose(const RunConfig& config) {
  if (config.matrix.empty()) throw Error(ErrorCode::UsageError, "decompose needs --matrix");
  const std::string text = config.matrix.front() == '@' ? read_text(config.matrix.substr(1)) : config.matrix;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid matrix JSON: ") + e.what());
  }
  const Allocation matrix = allocation_from_json(j);
  const Decomposition d = decompose(matrix);
  Output result;
  if (config.format == Format::Csv) {
    std::ostringstream os;
    os << "weight,perm\n";
    for (const auto& t : d.terms) {
      os << t.weight << ",";
      for (std::size_t i = 0; i < t.perm.size(); ++i) os << (i ? " " : "") << t.perm.object_of(i);
      os << "\n";
    }
    result.text = os.str();
  } else {
    result.text = render(Json{{"matrix", to_json(matrix)}, {"terms", to_json(d)}});
  }
  return result;
}

Output run_lemma(const RunConfig& config) {
  require_seed(config);
  std::vector<LemmaId> ids;
  for (const auto& name : config.lemmas) ids.push_back(lemma_from_string(name));
  if (ids.empty()) ids = all_lemmas();
  std::vector<std::string> rule_names = config.rules;
  if (rule_names.empty()) rule_names.push_back("serial");

  std::vector<LemmaReport> reports;
  for (const auto& name : rule_names) {
    const Rule rule = memoize(rule_by_name(name));
    for (const LemmaId id : ids) reports.push_back(verify_lemma(id, rule, config.trials, config.check.seed));
  }

  Output result;
  const bool clean = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.failures.empty(); });
  result.code = clean ? kExitPass : kExitFail;
  if (config.format == Format::Csv) {
    std::ostringstream os;
    os << "lemma,rule,trials,accepted,rejected,failures,status\n";
    for (const auto& r : reports) {
      os << to_string(r.lemma) << ',' << r.rule << ',' << r.trials << ',' << r.accepted << ',' << r.rejected << ','
         << r.failures.size() << ',' << to_string(r.status) << '\n';
    }
    result.text = os.str();
  } else {
    std::vector<Json> items;
    for (const auto& r : reports) items.push_back(to_json(r));
    result.text = render(one_or_many(std::move(items)));
  }
  return result;
}

Output run_stress(const RunConfig& config) {
  require_seed(config);
  const std::vector<Rule> family = config.rules.empty() ? builtin_family(config.check.seed) : rules_of(config);
  const StressReport report = theorem_stress(family, config.check);
  Output result;
  result.code = report.passed() ? kExitPass : kExitFail;
  result.text = config.format == Format::Csv
                    ? stress_csv(report)
                    : render(to_json(report, config.check.grid_description(), config.timing));
  return result;
}

Output run_theorem2(const RunConfig& config) {
  require_seed(config);
  if (config.rules.empty()) throw Error(ErrorCode::UsageError, "theorem2 needs at least one --rule");
  std::vector<Verdict> verdicts;
  const auto v_profiles = sample_v_profiles(config.v_profiles, config.check);
  for (const Rule& rule : rules_of(config)) verdicts.push_back(theorem2_check(rule, v_profiles, config.check));
  Output result;
  const bool all_pass = std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed(); });
  result.code = all_pass ? kExitPass : kExitFail;
  if (config.format == Format::Csv) {
    result.text = verdicts_csv(verdicts);
  } else {
    std::vector<Json> items;
    for (const auto& v : verdicts) items.push_back(to_json(v, config.check.grid_description(), config.timing));
    result.text = render(one_or_many(std::move(items)));
  }
  return result;
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (!config.out) {
    out << text;
    return;
  }
  std::ofstream file(*config.out, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot write " + *config.out);
  file << text;
}

}  // namespace

int run(const RunConfig& given, std::ostream& out, std::ostream& err) {
  RunConfig config = given;
  if (config.seed) config.check.seed = *config.seed;
  try {
    config.check.validate();
    Output result;
    switch (config.command) {
      case Command::Check: result = run_check(config); break;
      case Command::Decompose: result = run_decompose(config); break;
      case Command::Lemma: result = run_lemma(config); break;
      case Command::Stress: result = run_stress(config); break;
      case Command::Theorem2: result = run_theorem2(config); break;
    }
    emit(config, result.text, out);
    return result.code;
  } catch (const Error& e) {
    if (is_finding(e.code())) {
      Json j{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
      emit(config, render(j), out);
      return kExitFail;
    }
    err << "ordlab: " << e.what() << "\n";
    return kExitUsage;
  }
}

int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks of random-assignment rules against allocation axioms", "ordlab"};
  app.require_subcommand(1);

  RunConfig config;
  std::string grid, tau, delta;
  std::uint64_t seed = 0;
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}};

  auto common = [&](CLI::App* sub, bool seeded) {
    auto* seed_opt = sub->add_option("--seed", seed, "Seed for every sampled quantity");
    if (seeded) seed_opt->required();
    sub->add_option("--grid", grid, "Comma-separated mu values in (0,1)");
    sub->add_option("--samples", config.check.samples_per_cell, "Profiles per ordinal cell")->check(CLI::PositiveNumber);
    sub->add_option("--workers", config.check.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", config.out, "Write the report here instead of stdout");
    sub->add_option("--format", config.format, "json or csv")->transform(CLI::CheckedTransformer(formats).description(""))->type_name("json|csv");
    sub->add_option("--tau", tau, "Continuity gap threshold, p/q");
    sub->add_option("--delta", delta, "Continuity interval width, p/q");
    sub->add_option("--n", config.check.n, "Economy size; above 3 nothing is asserted");
    sub->add_flag("--no-timing", [&](std::int64_t) { config.timing = false; }, "Write elapsed_ms as 0");
  };

  auto* check = app.add_subcommand("check", "Run axiom checkers on rules");
  common(check, true);
  check->add_option("--rule", config.rules, "Rule name (repeatable)");
  check->add_option("--axiom", config.axioms, "Axiom name (repeatable); default: all but sd-strategy-proofness");
  check->add_option("--profiles", config.profiles, "Profile file or generator spec for the efficiency check");

  auto* decompose_cmd = app.add_subcommand("decompose", "Birkhoff-von Neumann decomposition of a matrix");
  common(decompose_cmd, false);
  decompose_cmd->add_option("--matrix", config.matrix, "@file.json or inline JSON rows")->required();

  auto* lemma = app.add_subcommand("lemma", "Sampled property tests of the lemma statements");
  common(lemma, true);
  lemma->add_option("--rule", config.rules, "Rule name (repeatable); default serial");
  lemma->add_option("--lemma", config.lemmas, "L1..L10 (repeatable); default all");
  lemma->add_option("--trials", config.trials, "Accepted instances per lemma");

  auto* stress = app.add_subcommand("stress", "Axioms versus ordinality across a rule family");
  common(stress, true);
  stress->add_option("--rule", config.rules, "Rule name (repeatable); default the built-in family");

  auto* theorem2 = app.add_subcommand("theorem2", "Cell invariance and separation on the extended domain");
  common(theorem2, true);
  theorem2->add_option("--rule", config.rules, "Rule name (repeatable)");
  theorem2->add_option("--v-profiles", config.v_profiles, "Number of sampled extended-domain profiles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (check->parsed()) config.command = Command::Check;
  if (decompose_cmd->parsed()) config.command = Command::Decompose;
  if (lemma->parsed()) config.command = Command::Lemma;
  if (stress->parsed()) config.command = Command::Stress;
  if (theorem2->parsed()) config.command = Command::Theorem2;

  try {
    if (!grid.empty()) config.check.mu_grid = parse_rational_list(grid);
    if (!tau.empty()) config.check.continuity_gap_tau = Rational::parse(tau);
    if (!delta.empty()) config.check.continuity_interval_delta = Rational::parse(delta);
  } catch (const Error& e) {
    err << "ordlab: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!decompose_cmd->parsed() || decompose_cmd->count("--seed") > 0) config.seed = seed;
  return run(config, out, err);
}

}  // namespace ordlab::cli
