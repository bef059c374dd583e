#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqfmeca/diagnostic.hpp"
#include "seqfmeca/error_catalog.hpp"
#include "seqfmeca/fmeca.hpp"

namespace seqfmeca {

// Versioned schema identifiers carried in every document's "schema" field.
namespace schema {
inline constexpr std::string_view kWorksheet = "seqfmeca.worksheet/1";
inline constexpr std::string_view kAnnotations = "seqfmeca.annotations/1";
inline constexpr std::string_view kMatrix = "seqfmeca.matrix/1";
inline constexpr std::string_view kCandidates = "seqfmeca.candidates/1";
inline constexpr std::string_view kDiagnostics = "seqfmeca.diagnostics/1";
inline constexpr std::string_view kReport = "seqfmeca.report/1";
inline constexpr std::string_view kSummary = "seqfmeca.summary/1";
}  // namespace schema

template <typename T>
struct Loaded {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;
};

// All writers produce two-space indented JSON with a trailing newline and a
// fixed key order.
std::string write_worksheet(const Worksheet& worksheet);
Loaded<Worksheet> read_worksheet(std::string_view text,
                                 std::string_view file = "<worksheet>");

// Severity may be given as a level number or name; probability as a name or
// abbreviation. A "waiver_justification" key marks the row waived.
Loaded<AnnotationDocument> read_annotations(std::string_view text,
                                            std::string_view file = "<annotations>");
std::string write_annotations(const AnnotationDocument& document);

// Shape errors are F010; a well-formed but non-monotone matrix is F011.
Loaded<RiskMatrix> read_matrix(std::string_view text,
                               std::string_view file = "<matrix>");
std::string write_matrix(const RiskMatrix& matrix);

std::string write_candidates(const CandidateSet& candidates);
std::string write_diagnostics(const std::vector<Diagnostic>& diagnostics);

}  // namespace seqfmeca
