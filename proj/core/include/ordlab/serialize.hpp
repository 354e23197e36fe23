#pragma once

// JSON and CSV forms of the library's values and reports. Rationals are
// written as "p/q" strings so that files stay exact.

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "ordlab/allocation.hpp"
#include "ordlab/axioms.hpp"
#include "ordlab/bvn.hpp"
#include "ordlab/harness.hpp"
#include "ordlab/rational.hpp"

namespace ordlab {

/// Keys keep insertion order, so equal reports serialize to equal bytes.
using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Json to_json(const Lottery& lot);
Json to_json(const Allocation& x);
Json to_json(const BernoulliUtility& u);
Json to_json(const UtilityProfile& profile);
Json to_json(const Decomposition& d);
Json to_json(const Witness& w);
/// With `timing` false, elapsed_ms is written as 0.
Json to_json(const Verdict& v, const std::string& grid_description, bool timing = true);
Json to_json(const LemmaWitness& w);
Json to_json(const LemmaReport& r);
Json to_json(const StressReport& r, const std::string& grid_description, bool timing = true);

/// Accepts "p/q" strings and JSON integers. Throws ParseError.
Rational rational_from_json(const Json& j);
/// A square array of rows. Throws ParseError or the allocation errors.
Allocation allocation_from_json(const Json& j);
UtilityProfile profile_from_json(const Json& j);

/// Header "rule,axiom,status,coverage", one row per verdict.
std::string verdicts_csv(std::span<const Verdict> verdicts);
std::string stress_csv(const StressReport& r);

}  // namespace ordlab
