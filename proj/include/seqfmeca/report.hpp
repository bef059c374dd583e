#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqfmeca/fmeca.hpp"
#include "seqfmeca/model.hpp"
#include "seqfmeca/trace.hpp"

namespace seqfmeca {

enum class ReportFormat : std::uint8_t { kMarkdown, kCsv, kJson };

std::string_view to_string(ReportFormat f);
std::optional<ReportFormat> parse_report_format(std::string_view text);

struct ReportOptions {
  ReportFormat format = ReportFormat::kMarkdown;
  bool include_waived = false;
  std::optional<std::size_t> top_n;  // >= 1 when present
};

// FMECA table in rank order. Markdown groups rows into one table per
// interaction; CSV is flat; JSON carries the full row objects. Throws
// std::invalid_argument for top_n == 0.
std::string emit_fmeca(const Worksheet& worksheet, const RiskMatrix& matrix,
                       const ReportOptions& options = {});

struct SummaryOptions {
  ReportFormat format = ReportFormat::kMarkdown;  // markdown or json
  std::size_t top_n = 10;
};

// Risk class counts over rated rows, the top ranked rows, undisposed
// candidates and waivers.
std::string emit_summary(const Worksheet& worksheet, const RiskMatrix& matrix,
                         const SummaryOptions& options = {});

// PlantUML sequence diagrams. The mutant form adds a note at the anchor.
std::string emit_sequence_text(const Interaction& interaction, const Trace& trace);
std::string emit_sequence_text(const Interaction& interaction, const MutantTrace& mutant);

// RFC 4180: fields holding a comma, quote, CR or LF are quoted with inner
// quotes doubled; records end with CRLF.
std::string csv_field(std::string_view field);
std::string csv_record(const std::vector<std::string>& fields);

}  // namespace seqfmeca
