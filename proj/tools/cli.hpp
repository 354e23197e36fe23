#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ordlab/axioms.hpp"

namespace ordlab::cli {

enum class Command { Check, Decompose, Lemma, Stress, Theorem2 };
enum class Format { Json, Csv };

struct RunConfig {
  Command command = Command::Check;
  std::vector<std::string> rules;
  std::vector<std::string> axioms;
  /// A file path, or a generator spec such as "grid:mu=1/10,1/2" or "random:count=100".
  std::optional<std::string> profiles;
  CheckConfig check;
  std::optional<std::string> out;
  Format format = Format::Json;
  std::optional<std::uint64_t> seed;
  /// "@path" or inline JSON rows.
  std::string matrix;
  std::vector<std::string> lemmas;
  std::size_t trials = 500;
  std::size_t v_profiles = 20;
  bool timing = true;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line into a RunConfig and runs it.
int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ordlab::cli
