#pragma once

#include "gradual/bag.hpp"
#include "gradual/solve.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gradual {

struct ParseDiagnostic {
  enum class Severity { Error, Warning };

  int line = 0;    // 1-based
  int column = 0;  // 1-based
  std::string message;
  Severity severity = Severity::Error;

  /// "line:column: error: message"
  std::string to_string() const;
};

struct ParseResult {
  std::optional<Bag> bag;  // set iff no error diagnostics
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return bag.has_value(); }
};

/// Parses the BAG text format:
///
///     arg(<name>,<weight>).   att(<from>,<to>).   sup(<from>,<to>).
///
/// Names match [A-Za-z_][A-Za-z0-9_]*, weights are decimal literals in [0,1].
/// `#` and `//` start a comment running to end of line; whitespace is free.
/// Edges may refer to arguments declared later in the file. Duplicate edges
/// are accepted with a warning.
ParseResult parse_bag(std::string_view text);
ParseResult parse_bag(std::istream& in);

/// Shortest fixed-notation decimal that parses back to exactly `x`.
std::string format_weight(double x);

/// One statement per line: arguments in order, then attacks, then supports.
std::string serialize_bag(const Bag& bag);

/// Header `t,<name1>,...,<nameN>` followed by one row per sample.
/// Throws std::invalid_argument on an empty or ragged trajectory and
/// std::ios_base::failure if the stream goes bad.
void write_trajectory_csv(const Trajectory& trajectory, const std::vector<std::string>& names,
                          std::ostream& sink);

}  // namespace gradual
