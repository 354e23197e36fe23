#include "ordlab/rules.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "ordlab/error.hpp"
#include "ordlab/lp.hpp"
#include "ordlab/ordinal.hpp"

namespace ordlab {

namespace {

std::vector<OrdinalPreference> ordinals(const UtilityProfile& profile) {
  std::vector<OrdinalPreference> out;
  out.reserve(profile.size());
  for (const auto& u : profile) {
    if (u.size() != profile.size()) throw Error(ErrorCode::DimensionMismatch, "profile is not square");
    out.push_back(ordinal_of(u));
  }
  return out;
}

// Each agent in `priority` takes their best object still available.
std::vector<std::size_t> serial_assignment(const std::vector<OrdinalPreference>& prefs,
                                           const std::vector<std::size_t>& priority) {
  const std::size_t n = prefs.size();
  std::vector<bool> taken(n, false);
  std::vector<std::size_t> assignment(n);
  for (const std::size_t agent : priority) {
    for (const ObjectId a : prefs[agent].ranking()) {
      if (!taken[a.index]) {
        taken[a.index] = true;
        assignment[agent] = a.index;
        break;
      }
    }
  }
  return assignment;
}

}  // namespace

Allocation rsd_allocate(const UtilityProfile& profile) {
  const auto prefs = ordinals(profile);
  const std::size_t n = prefs.size();
  std::vector<std::size_t> priority(n);
  std::iota(priority.begin(), priority.end(), std::size_t{0});
  AllocationBuilder builder(n);
  long orders = 0;
  do {
    builder.add_assignment(serial_assignment(prefs, priority), Rational(1));
    ++orders;
  } while (std::next_permutation(priority.begin(), priority.end()));
  builder.scale(Rational(1, orders));
  return std::move(builder).finish();
}

Allocation ps_allocate(const UtilityProfile& profile) {
  const auto prefs = ordinals(profile);
  const std::size_t n = prefs.size();
  std::vector<Rational> supply(n, Rational(1));
  AllocationBuilder builder(n);
  Rational clock;
  std::vector<std::size_t> eating(n);
  std::vector<long> eaters(n);
  while (clock < 1) {
    std::fill(eaters.begin(), eaters.end(), 0L);
    for (std::size_t i = 0; i < n; ++i) {
      for (const ObjectId a : prefs[i].ranking()) {
        if (supply[a.index].sign() > 0) {
          eating[i] = a.index;
          break;
        }
      }
      ++eaters[eating[i]];
    }
    Rational step = Rational(1) - clock;
    for (std::size_t a = 0; a < n; ++a) {
      if (eaters[a] == 0) continue;
      Rational until_empty = supply[a] / Rational(eaters[a]);
      if (until_empty < step) step = std::move(until_empty);
    }
    for (std::size_t i = 0; i < n; ++i) builder.add(i, eating[i], step);
    for (std::size_t a = 0; a < n; ++a) {
      if (eaters[a] != 0) supply[a] -= step * Rational(eaters[a]);
    }
    clock += step;
  }
  return std::move(builder).finish();
}

Allocation utilitarian_allocate(const UtilityProfile& profile) {
  UtilityProfile canonical;
  canonical.reserve(profile.size());
  for (const auto& u : profile) canonical.push_back(canonicalize(u).as_bernoulli());
  LpResult r = maximize(LinearProgram::welfare(canonical));
  return std::move(*r.argmax);
}

Allocation serial_dictatorship_allocate(const UtilityProfile& profile) {
  const auto prefs = ordinals(profile);
  std::vector<std::size_t> priority(prefs.size());
  std::iota(priority.begin(), priority.end(), std::size_t{0});
  return Allocation::from_assignment(serial_assignment(prefs, priority));
}

Rule rsd_rule() { return Rule{"rsd", rsd_allocate, true}; }
Rule ps_rule() { return Rule{"ps", ps_allocate, true}; }
Rule utilitarian_rule() { return Rule{"utilitarian", utilitarian_allocate, false}; }
Rule serial_dictatorship_rule() { return Rule{"serial", serial_dictatorship_allocate, true}; }

Rule uniform_rule() {
  return Rule{"uniform", [](const UtilityProfile& p) { return Allocation::uniform(p.size()); }, true};
}

Rule blend_rule(Rule r1, Rule r2, Rational alpha) {
  if (alpha.sign() < 0 || alpha > 1) throw Error(ErrorCode::AlphaOutOfRange, "blend weight " + alpha.str());
  std::string name = "blend:" + r1.name + ":" + r2.name + ":" + alpha.str();
  const bool ordinal = r1.claims_ordinal && r2.claims_ordinal;
  auto allocate = [r1 = std::move(r1), r2 = std::move(r2), alpha](const UtilityProfile& p) {
    return convex_combination(alpha, r1(p), r2(p));
  };
  return Rule{std::move(name), std::move(allocate), ordinal};
}

namespace {

struct ProfileKeyHash {
  std::size_t operator()(const UtilityProfile& p) const {
    std::size_t h = p.size();
    for (const auto& u : p) {
      for (const auto& v : u.values()) h = h * 0x100000001b3ull ^ v.hash();
    }
    return h;
  }
};

struct Cache {
  std::mutex mutex;
  std::unordered_map<UtilityProfile, Allocation, ProfileKeyHash> table;
};

}  // namespace

Rule memoize(Rule rule) {
  auto cache = std::make_shared<Cache>();
  auto inner = rule.allocate;
  rule.allocate = [cache, inner = std::move(inner)](const UtilityProfile& p) {
    {
      std::lock_guard lock(cache->mutex);
      if (auto it = cache->table.find(p); it != cache->table.end()) return it->second;
    }
    Allocation out = inner(p);
    std::lock_guard lock(cache->mutex);
    cache->table.emplace(p, out);
    return out;
  };
  return rule;
}

Rule rule_by_name(std::string_view name) {
  if (name == "rsd") return rsd_rule();
  if (name == "ps") return ps_rule();
  if (name == "utilitarian") return utilitarian_rule();
  if (name == "serial") return serial_dictatorship_rule();
  if (name == "uniform") return uniform_rule();
  if (name.starts_with("blend:")) {
    std::string_view rest = name.substr(6);
    const auto first = rest.find(':');
    const auto last = rest.rfind(':');
    if (first == std::string_view::npos || last == first) {
      throw Error(ErrorCode::UnknownRule, "expected blend:<rule>:<rule>:p/q, got '" + std::string(name) + "'");
    }
    Rule r1 = rule_by_name(rest.substr(0, first));
    Rule r2 = rule_by_name(rest.substr(first + 1, last - first - 1));
    Rational alpha;
    try {
      alpha = Rational::parse(rest.substr(last + 1));
    } catch (const Error&) {
      throw Error(ErrorCode::UnknownRule, "bad blend weight in '" + std::string(name) + "'");
    }
    return blend_rule(std::move(r1), std::move(r2), std::move(alpha));
  }
  throw Error(ErrorCode::UnknownRule, "no rule named '" + std::string(name) + "'");
}

}  // namespace ordlab
