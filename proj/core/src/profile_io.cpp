#include "ordlab/profile_io.hpp"

#include <fstream>
#include <sstream>

#include "ordlab/error.hpp"
#include "ordlab/random.hpp"
#include "ordlab/serialize.hpp"

namespace ordlab {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void check_square(const UtilityProfile& p, const std::string& where) {
  for (const auto& u : p) {
    if (u.size() != p.size()) {
      throw Error(ErrorCode::DimensionMismatch, where + ": " + std::to_string(p.size()) + " agents but " +
                                                    std::to_string(u.size()) + " utilities in a row");
    }
  }
}

}  // namespace

std::vector<UtilityProfile> parse_profiles_csv(std::string_view text) {
  std::vector<UtilityProfile> profiles;
  UtilityProfile current;
  std::size_t first_line = 0;
  auto flush = [&]() {
    if (current.empty()) return;
    check_square(current, "profile starting at line " + std::to_string(first_line));
    profiles.push_back(std::move(current));
    current.clear();
  };
  std::size_t line_no = 0;
  for (std::string_view rest = text; !rest.empty() || line_no == 0;) {
    const auto nl = rest.find('\n');
    const std::string_view line = trim(rest.substr(0, nl));
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;
    if (current.empty()) first_line = line_no;
    std::vector<Rational> values;
    const auto fields = split(line, ',');
    for (std::size_t f = 0; f < fields.size(); ++f) {
      try {
        values.push_back(Rational::parse(fields[f]));
      } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ", field " + std::to_string(f + 1) +
                                               ": '" + std::string(fields[f]) + "' is not a rational");
      }
    }
    if (const auto tie = find_tie(values)) {
      throw Error(ErrorCode::TiesPresent, "line " + std::to_string(line_no) + ": agent " +
                                              std::to_string(current.size()) + " ties objects " +
                                              ObjectId{tie->first}.label() + " and " + ObjectId{tie->second}.label());
    }
    current.push_back(BernoulliUtility::make(std::move(values)));
  }
  flush();
  return profiles;
}

std::vector<UtilityProfile> parse_profiles_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected a JSON array of profiles");
  std::vector<UtilityProfile> profiles;
  for (std::size_t k = 0; k < j.size(); ++k) {
    UtilityProfile p = profile_from_json(j[k]);
    check_square(p, "profile " + std::to_string(k));
    profiles.push_back(std::move(p));
  }
  return profiles;
}

std::vector<UtilityProfile> parse_profile_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  return path.extension() == ".json" ? parse_profiles_json(text) : parse_profiles_csv(text);
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> values;
  for (const auto field : split(text, ',')) values.push_back(Rational::parse(field));
  return values;
}

std::vector<UtilityProfile> generate_profiles(std::string_view spec, const CheckConfig& config) {
  const auto colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const auto eq = args.find('=');
  const std::string_view key = args.substr(0, eq);
  const std::string_view value = eq == std::string_view::npos ? std::string_view{} : args.substr(eq + 1);

  if (kind == "grid" && (args.empty() || key == "mu")) {
    const std::vector<Rational> mu = args.empty() ? config.mu_grid : parse_rational_list(value);
    const ProfileGrid grid(config.n, utility_types(config.n, mu));
    std::vector<UtilityProfile> profiles;
    profiles.reserve(grid.profile_count());
    for (std::size_t k = 0; k < grid.profile_count(); ++k) profiles.push_back(grid.profile(k));
    return profiles;
  }
  if (kind == "random" && key == "count") {
    std::size_t count = 0;
    try {
      count = std::stoul(std::string(value));
    } catch (const std::exception&) {
      throw Error(ErrorCode::UsageError, "bad count in generator spec '" + std::string(spec) + "'");
    }
    const auto orders = OrdinalPreference::all(config.n);
    std::vector<UtilityProfile> profiles;
    for (std::size_t k = 0; k < count; ++k) {
      Rng rng = Rng::stream(config.seed, k);
      UtilityProfile p;
      for (std::size_t i = 0; i < config.n; ++i) {
        p.push_back(grid_utility(orders[rng.below(orders.size())], random_mu(rng, config.mu_grid)));
      }
      profiles.push_back(std::move(p));
    }
    return profiles;
  }
  throw Error(ErrorCode::UsageError, "unknown generator spec '" + std::string(spec) + "'");
}

}  // namespace ordlab
