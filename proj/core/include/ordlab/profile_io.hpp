#pragma once

// Reading utility profiles from files and generator specs.

#include <filesystem>
#include <string_view>
#include <vector>

#include "ordlab/allocation.hpp"
#include "ordlab/axioms.hpp"

namespace ordlab {

/// One agent per line, comma-separated "p/q" utilities; blank lines separate
/// profiles and lines starting with '#' are ignored.
/// Throws ParseError (with line and field), TiesPresent (with agent index)
/// or DimensionMismatch.
std::vector<UtilityProfile> parse_profiles_csv(std::string_view text);

/// A JSON array of profiles, each an array of utility rows.
std::vector<UtilityProfile> parse_profiles_json(std::string_view text);

/// JSON when the extension is .json, CSV otherwise. Throws IoError.
std::vector<UtilityProfile> parse_profile_file(const std::filesystem::path& path);

/// "grid:mu=1/10,1/2,9/10" enumerates every grid profile of size config.n;
/// "random:count=N" draws N seeded profiles. Throws UsageError.
std::vector<UtilityProfile> generate_profiles(std::string_view spec, const CheckConfig& config);

/// Comma-separated rationals. Throws ParseError.
std::vector<Rational> parse_rational_list(std::string_view text);

}  // namespace ordlab
