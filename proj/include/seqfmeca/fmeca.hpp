#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqfmeca/diagnostic.hpp"
#include "seqfmeca/error_catalog.hpp"
#include "seqfmeca/model.hpp"

namespace seqfmeca {

// Harm severity. Lower level numbers are worse.
enum class HarmSeverity : std::uint8_t {
  kCatastrophic = 1,
  kSevere = 2,
  kMajor = 3,
  kMinor = 4,
  kNegligible = 5,
};

inline constexpr std::array<HarmSeverity, 5> kAllSeverities = {
    HarmSeverity::kCatastrophic, HarmSeverity::kSevere, HarmSeverity::kMajor,
    HarmSeverity::kMinor, HarmSeverity::kNegligible};

constexpr int level(HarmSeverity s) { return static_cast<int>(s); }
std::string_view name(HarmSeverity s);
// "minor (4)"
std::string display(HarmSeverity s);
// Accepts 1-5 or a level name (case-insensitive; "sever" is read as
// "severe").
std::optional<HarmSeverity> parse_severity(std::string_view token);

// Probability that the failure mode leads to harm, highest first.
enum class Probability : std::uint8_t {
  kFrequent,
  kProbable,
  kOccasional,
  kRare,
  kImpossible,
};

inline constexpr std::array<Probability, 5> kAllProbabilities = {
    Probability::kFrequent, Probability::kProbable, Probability::kOccasional,
    Probability::kRare, Probability::kImpossible};

constexpr std::size_t index_of(Probability p) { return static_cast<std::size_t>(p); }
std::string_view name(Probability p);
// "F", "P", "O", "R", "I"
std::string_view abbreviation(Probability p);
// "probable (P)"
std::string display(Probability p);
// Accepts the abbreviation or the full name, case-insensitive.
std::optional<Probability> parse_probability(std::string_view token);

// Worst first.
enum class RiskClass : std::uint8_t {
  kIntolerable,
  kUndesirable,
  kTolerable,
  kAcceptable,
};

inline constexpr std::array<RiskClass, 4> kAllRiskClasses = {
    RiskClass::kIntolerable, RiskClass::kUndesirable, RiskClass::kTolerable,
    RiskClass::kAcceptable};

std::string_view name(RiskClass r);
std::optional<RiskClass> parse_risk_class(std::string_view token);

// Severity x probability -> risk class. Rows are severity levels 1..5,
// columns follow kAllProbabilities.
struct RiskMatrix {
  std::string name = "default";
  std::array<std::array<RiskClass, 5>, 5> cells{};

  RiskClass at(HarmSeverity s, Probability p) const {
    return cells[static_cast<std::size_t>(level(s) - 1)][index_of(p)];
  }

  static RiskMatrix default_matrix();

  friend bool operator==(const RiskMatrix&, const RiskMatrix&) = default;
};

// Checks monotonicity in both directions and that the impossible column is
// acceptable. Empty iff the matrix is usable.
std::vector<Diagnostic> validate_matrix(const RiskMatrix& matrix);

RiskClass risk_rank(HarmSeverity severity, Probability probability,
                    const RiskMatrix& matrix);

// ---------------------------------------------------------------------------
// Worksheet

// Empty or whitespace only; such a waiver justification counts as missing.
bool is_blank(std::string_view text);

struct WorksheetRow {
  std::string candidate_id;
  std::string interaction;
  std::optional<std::string> message;
  ErrorModelId error = ErrorModelId::E1;
  std::string display_name;  // "<use case>:: <operation>"
  std::string failure_mode;
  std::string cause;
  std::string effect_local;
  std::string effect_upper;
  std::string effect_system;
  std::optional<HarmSeverity> severity;
  std::optional<Probability> probability;
  std::string detection_failure_mode;
  std::string detection_effects;
  std::string prevention;
  std::string protection;
  std::string other_actions;
  std::string remarks;
  bool waived = false;
  std::string waiver_justification;
  std::optional<HarmSeverity> residual_severity;
  std::optional<Probability> residual_probability;

  bool disposed() const {
    return (severity && probability) || (waived && !is_blank(waiver_justification));
  }

  friend bool operator==(const WorksheetRow&, const WorksheetRow&) = default;
};

struct Worksheet {
  std::string model_name;
  std::string model_digest;
  std::string matrix = "default";
  std::vector<WorksheetRow> rows;

  const WorksheetRow* find(std::string_view candidate_id) const;

  friend bool operator==(const Worksheet&, const Worksheet&) = default;
};

// Pre-filled failure mode text: the canonical description, followed by the
// targeted element and variant in brackets when the candidate has them.
std::string default_failure_mode_text(const FailureModeCandidate& candidate);

// One blank row per candidate in enumeration order. Throws ModelError when
// the candidates were not enumerated from `model`.
Worksheet init_worksheet(const SystemModel& model, const CandidateSet& candidates);

// Analyst input for one row. Severity/probability tokens stay textual until
// merge so that malformed values are reported rather than dropped.
struct Annotation {
  std::string candidate_id;
  std::optional<std::string> failure_mode;
  std::optional<std::string> cause;
  std::optional<std::string> effect_local;
  std::optional<std::string> effect_upper;
  std::optional<std::string> effect_system;
  std::optional<std::string> severity;
  std::optional<std::string> probability;
  std::optional<std::string> detection_failure_mode;
  std::optional<std::string> detection_effects;
  std::optional<std::string> prevention;
  std::optional<std::string> protection;
  std::optional<std::string> other_actions;
  std::optional<std::string> remarks;
  std::optional<std::string> waiver_justification;  // present => waived
  std::optional<std::string> residual_severity;
  std::optional<std::string> residual_probability;
};

struct AnnotationDocument {
  std::vector<Annotation> annotations;
};

struct MergeResult {
  Worksheet worksheet;  // unchanged input when any error is reported
  std::vector<Diagnostic> diagnostics;
};

MergeResult merge_annotations(const Worksheet& worksheet,
                              const AnnotationDocument& annotations);

// Residual values must not make harm worse or more likely.
std::optional<std::string> residual_violation(const WorksheetRow& row);

// (class before mitigation, class after). Throws ModelError for waived or
// undisposed rows and for rows breaking the residual invariant.
std::pair<RiskClass, RiskClass> residual_risk(const WorksheetRow& row,
                                              const RiskMatrix& matrix);

// Errors for candidates with no row (plus one drift error when the model
// digest changed), warnings for undisposed rows, info for stale rows.
std::vector<Diagnostic> completeness_check(const Worksheet& worksheet,
                                           const CandidateSet& candidates);

// Rated rows by (risk class worst first, severity level, probability highest
// first, candidate id), then undisposed rows, then waived rows, each in id
// order.
std::vector<WorksheetRow> rank_rows(const Worksheet& worksheet,
                                    const RiskMatrix& matrix);

}  // namespace seqfmeca
