#include "ordlab/serialize.hpp"

#include <sstream>

#include "ordlab/error.hpp"

namespace ordlab {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

}  // namespace

Json to_json(const Rational& q) { return q.str(); }

Json to_json(const Lottery& lot) {
  Json j = Json::array();
  for (const auto& p : lot.probs()) j.push_back(to_json(p));
  return j;
}

Json to_json(const Allocation& x) {
  Json j = Json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    Json row = Json::array();
    for (const auto& p : x.row_span(i)) row.push_back(to_json(p));
    j.push_back(std::move(row));
  }
  return j;
}

Json to_json(const BernoulliUtility& u) {
  Json j = Json::array();
  for (const auto& v : u.values()) j.push_back(to_json(v));
  return j;
}

Json to_json(const UtilityProfile& profile) {
  Json j = Json::array();
  for (const auto& u : profile) j.push_back(to_json(u));
  return j;
}

Json to_json(const Decomposition& d) {
  Json j = Json::array();
  for (const auto& t : d.terms) j.push_back(Json{{"weight", to_json(t.weight)}, {"perm", t.perm.assignment()}});
  return j;
}

Json to_json(const Witness& w) {
  Json j;
  j["summary"] = w.summary;
  j["profile"] = to_json(w.profile);
  if (w.alternate_profile) j["alternate_profile"] = to_json(*w.alternate_profile);
  if (w.agent) j["agent"] = w.agent->index;
  Json allocs = Json::array();
  for (const auto& a : w.allocations) allocs.push_back(to_json(a));
  j["allocations"] = std::move(allocs);
  if (w.gap) j["gap"] = to_json(*w.gap);
  if (w.alpha_interval) j["alpha_interval"] = {to_json(w.alpha_interval->first), to_json(w.alpha_interval->second)};
  return j;
}

Json to_json(const Verdict& v, const std::string& grid_description, bool timing) {
  Json j;
  j["axiom"] = std::string(to_string(v.axiom));
  j["rule"] = v.rule;
  j["status"] = std::string(to_string(v.status));
  if (v.witness) j["witness"] = to_json(*v.witness);
  j["coverage"] = v.coverage;
  j["grid_description"] = grid_description;
  j["seed"] = v.seed;
  j["elapsed_ms"] = timing ? v.elapsed_ms : 0;
  return j;
}

Json to_json(const LemmaWitness& w) {
  Json j;
  j["trial"] = w.trial;
  j["summary"] = w.summary;
  if (w.v_member) {
    j["v_member"] = {{"order", w.v_member->order.str()},
                     {"base", to_json(w.v_member->base)},
                     {"exponent", w.v_member->exponent}};
    Json lots = Json::array();
    for (const auto& l : w.lotteries) lots.push_back(to_json(l));
    j["lotteries"] = std::move(lots);
    if (w.separating) j["separating_utility"] = to_json(*w.separating);
    return j;
  }
  j["profile"] = to_json(w.profile);
  if (w.alternate_profile) j["alternate_profile"] = to_json(*w.alternate_profile);
  if (w.agent) j["agent"] = w.agent->index;
  if (w.partner) j["partner"] = w.partner->index;
  Json allocs = Json::array();
  for (const auto& a : w.allocations) allocs.push_back(to_json(a));
  j["allocations"] = std::move(allocs);
  return j;
}

Json to_json(const LemmaReport& r) {
  Json j;
  j["lemma_id"] = std::string(to_string(r.lemma));
  j["rule"] = r.rule;
  j["trials"] = r.trials;
  j["accepted"] = r.accepted;
  j["rejected"] = r.rejected;
  j["status"] = std::string(to_string(r.status));
  Json failures = Json::array();
  for (const auto& w : r.failures) failures.push_back(to_json(w));
  j["failures"] = std::move(failures);
  j["seed"] = r.seed;
  return j;
}

Json to_json(const StressReport& r, const std::string& grid_description, bool timing) {
  Json j;
  j["rules_tested"] = r.rules_tested;
  Json results = Json::array();
  for (const auto& entry : r.results) {
    Json axioms = Json::array();
    for (const auto& v : entry.axioms) axioms.push_back(to_json(v, grid_description, timing));
    results.push_back(Json{{"rule", entry.rule},
                           {"axioms", std::move(axioms)},
                           {"ordinality", to_json(entry.ordinality, grid_description, timing)}});
  }
  j["results"] = std::move(results);
  j["metamorphic_violations"] = r.metamorphic_violations;
  j["asserted"] = r.asserted;
  return j;
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw Error(ErrorCode::ParseError, "expected a \"p/q\" string or an integer, got " + j.dump());
}

Allocation allocation_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "matrix must be an array of rows");
  std::vector<std::vector<Rational>> grid;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorCode::ParseError, "matrix row must be an array");
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    grid.push_back(std::move(r));
  }
  return Allocation::make(grid);
}

UtilityProfile profile_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "profile must be an array of utility rows");
  UtilityProfile profile;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw Error(ErrorCode::ParseError, "utility of agent " + std::to_string(i) + " must be an array");
    std::vector<Rational> values;
    for (const auto& x : j[i]) values.push_back(rational_from_json(x));
    if (const auto tie = find_tie(values)) {
      throw Error(ErrorCode::TiesPresent, "agent " + std::to_string(i) + " ties objects " +
                                              ObjectId{tie->first}.label() + " and " + ObjectId{tie->second}.label());
    }
    profile.push_back(BernoulliUtility::make(std::move(values)));
  }
  return profile;
}

std::string verdicts_csv(std::span<const Verdict> verdicts) {
  std::ostringstream os;
  os << "rule,axiom,status,coverage\n";
  for (const auto& v : verdicts) {
    os << csv_field(v.rule) << ',' << to_string(v.axiom) << ',' << to_string(v.status) << ','
       << csv_field(v.coverage) << '\n';
  }
  return os.str();
}

std::string stress_csv(const StressReport& r) {
  std::vector<Verdict> all;
  for (const auto& entry : r.results) {
    all.insert(all.end(), entry.axioms.begin(), entry.axioms.end());
    all.push_back(entry.ordinality);
  }
  return verdicts_csv(all);
}

}  // namespace ordlab
