#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seqfmeca {

enum class Severity : std::uint8_t { kError, kWarning, kInfo };

std::string_view to_string(Severity severity);

// 1-based line/column, columns counted in bytes. `end` is exclusive.
struct SourcePos {
  std::uint32_t line = 1;
  std::uint32_t column = 1;
  std::size_t offset = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

struct SourceSpan {
  std::string file;
  SourcePos start;
  SourcePos end;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

// Stable diagnostic codes. The numeric part never changes once released;
// new findings get new numbers.
namespace code {
// lexical
inline constexpr std::string_view kIllegalCharacter = "L001";
inline constexpr std::string_view kUnterminatedString = "L002";
inline constexpr std::string_view kInvalidUtf8 = "L003";
inline constexpr std::string_view kBadNumber = "L004";
// syntax
inline constexpr std::string_view kUnexpectedToken = "P001";
inline constexpr std::string_view kUnexpectedEof = "P002";
inline constexpr std::string_view kDuplicateClause = "P003";
inline constexpr std::string_view kBadDuration = "P004";
inline constexpr std::string_view kMissingSystem = "P005";
// semantic (parser)
inline constexpr std::string_view kDuplicateName = "S001";
// model validation
inline constexpr std::string_view kDuplicateParticipant = "V001";
inline constexpr std::string_view kDuplicateUseCase = "V002";
inline constexpr std::string_view kDuplicateInteraction = "V003";
inline constexpr std::string_view kDuplicateMessage = "V004";
inline constexpr std::string_view kUnresolvedParticipant = "V005";
inline constexpr std::string_view kEndpointNotParticipant = "V006";
inline constexpr std::string_view kUnresolvedPredecessor = "V007";
inline constexpr std::string_view kPrecedenceCycle = "V008";
inline constexpr std::string_view kUnresolvedUseCase = "V009";
inline constexpr std::string_view kUnresolvedActor = "V010";
inline constexpr std::string_view kBadAllocation = "V011";
inline constexpr std::string_view kBadDurationBound = "V012";
inline constexpr std::string_view kBadDomain = "V013";
inline constexpr std::string_view kDuplicateParameter = "V014";
inline constexpr std::string_view kInvalidIdentifier = "V015";
// allocation lints
inline constexpr std::string_view kUnallocatedUseCase = "W001";
inline constexpr std::string_view kOrphanUseCase = "W002";
inline constexpr std::string_view kConcurrentLoad = "W003";
inline constexpr std::string_view kExcludedRealized = "W004";
// worksheet / documents
inline constexpr std::string_view kMissingRow = "F001";
inline constexpr std::string_view kUndisposedRow = "F002";
inline constexpr std::string_view kStaleRow = "F003";
inline constexpr std::string_view kModelDrift = "F004";
inline constexpr std::string_view kUnknownCandidate = "F005";
inline constexpr std::string_view kBadSeverity = "F006";
inline constexpr std::string_view kBadProbability = "F007";
inline constexpr std::string_view kResidualInvariant = "F008";
inline constexpr std::string_view kEmptyWaiver = "F009";
inline constexpr std::string_view kSchema = "F010";
inline constexpr std::string_view kNonMonotoneMatrix = "F011";
inline constexpr std::string_view kDuplicateRow = "F012";
// profiles
inline constexpr std::string_view kBadProfile = "R001";
}  // namespace code

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;
  std::optional<SourceSpan> span;
  // Model path such as "interaction/InstallInit/msg/m2"; empty for pure
  // source diagnostics.
  std::string path;
  std::string text;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// Sorts by (path, code, span start, text).
void sort_diagnostics(std::vector<Diagnostic>& diagnostics);

// "file:line:col: error[V005]: text" or "path: warning[W003]: text".
std::string format_human(const Diagnostic& diagnostic);

// Thrown by lookups and operations whose preconditions do not hold.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace seqfmeca
