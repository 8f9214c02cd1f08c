#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "strippress/models.hpp"

namespace strippress {

// Text model format, by section:
//   [alphabet]     whitespace-separated symbol names
//   [e1]           one "left right" name pair per line
//   [e2]           one "lower upper" name pair per line
//   [interaction]  lines "vertex NAME = EXPR", "hedge A B = EXPR",
//                  "vedge A B = EXPR"; omitted entries are zero; EXPR is a
//                  decimal literal or [+-]log(x) / [+-]exp(x)
//   [boundary]     "t = NAME..." and "b = NAME..." period-p row words
// '#' starts a comment. The [interaction] and [boundary] sections are
// optional (zero interaction, no default rows).
struct ModelFileData {
  Model model;
  std::optional<PeriodicRow> bottom;
  std::optional<PeriodicRow> top;
};

ModelFileData parse_model_file(std::istream& in, const std::string& origin = "<stream>");
ModelFileData load_model_file(const std::string& path);

// Single value expression, shared with tests.
double parse_value_expr(const std::string& text);

}  // namespace strippress
