#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqfmeca/diagnostic.hpp"
#include "seqfmeca/model.hpp"

namespace seqfmeca {

// Result of parsing one `.rau` source. `model` is present iff no diagnostic
// has error severity.
struct ParseResult {
  std::optional<SystemModel> model;
  std::vector<Diagnostic> diagnostics;
};

// Parses a model source. Accepts LF and CRLF line endings, `#` comments, and
// UTF-8 inside strings and comments. Never throws on malformed input; every
// problem is reported as a diagnostic carrying a source span, and parsing
// resumes at the next declaration.
ParseResult parse(std::string_view text, std::string_view file = "<input>");

// Canonical text form: declaration order preserved, two-space indentation,
// LF line endings. parse(serialize(m)).model == m for well-formed m.
std::string serialize(const SystemModel& model);

}  // namespace seqfmeca
