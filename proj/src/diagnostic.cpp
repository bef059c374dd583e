#include "seqfmeca/diagnostic.hpp"

#include <algorithm>
#include <tuple>

namespace seqfmeca {

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::kError:
      return "error";
    case Severity::kWarning:
      return "warning";
    case Severity::kInfo:
      return "info";
  }
  return "error";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) {
                       return d.severity == Severity::kError;
                     });
}

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
  std::stable_sort(
      diagnostics.begin(), diagnostics.end(),
      [](const Diagnostic& a, const Diagnostic& b) {
        const std::size_t a_off = a.span ? a.span->start.offset : 0;
        const std::size_t b_off = b.span ? b.span->start.offset : 0;
        return std::tie(a.path, a.code, a_off, a.text) <
               std::tie(b.path, b.code, b_off, b.text);
      });
}

std::string format_human(const Diagnostic& d) {
  std::string out;
  if (d.span) {
    out += d.span->file.empty() ? "<input>" : d.span->file;
    out += ':' + std::to_string(d.span->start.line) + ':' +
           std::to_string(d.span->start.column);
  } else {
    out += d.path.empty() ? "<model>" : d.path;
  }
  out += ": ";
  out += to_string(d.severity);
  out += '[' + d.code + "]: " + d.text;
  return out;
}

}  // namespace seqfmeca
