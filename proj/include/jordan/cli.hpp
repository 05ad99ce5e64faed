#pragma once

// Batch front end: one subcommand per run, JSON input, JSON report out.
// Exit status 0 when every check passes, 1 on a failed check or a numerical
// error, 2 on a schema violation (bad flags, unreadable or malformed input).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace jordan::cli {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string subcommand;
  std::optional<std::string> input;
  std::uint64_t seed = 0;
  int restarts = 32;
  /// Overrides the primary tolerance of the subcommand.
  std::optional<double> tol;
  /// Report path; the report goes to the output stream when empty.
  std::optional<std::string> output;
  std::optional<int> n;
  /// Algebras as block-size lists, e.g. {{2}, {1, 2}}.
  std::vector<std::vector<int>> dims;
  std::optional<int> iters;
  std::optional<std::string> csv;
};

const std::vector<std::string>& subcommands();

/// "1,2,3" -> {1, 2, 3}. Throws SchemaError on anything else.
std::vector<int> parse_dims(const std::string& text);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace jordan::cli
