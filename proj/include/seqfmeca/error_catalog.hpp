#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "seqfmeca/diagnostic.hpp"
#include "seqfmeca/model.hpp"

namespace seqfmeca {

// The eleven generic message error models.
enum class ErrorModelId : std::uint8_t {
  E1 = 1, E2, E3, E4, E5, E6, E7, E8, E9, E10, E11,
};

inline constexpr std::array<ErrorModelId, 11> kAllErrorModels = {
    ErrorModelId::E1, ErrorModelId::E2, ErrorModelId::E3, ErrorModelId::E4,
    ErrorModelId::E5, ErrorModelId::E6, ErrorModelId::E7, ErrorModelId::E8,
    ErrorModelId::E9, ErrorModelId::E10, ErrorModelId::E11,
};

constexpr int number(ErrorModelId e) { return static_cast<int>(e); }
constexpr std::size_t index_of(ErrorModelId e) {
  return static_cast<std::size_t>(e) - 1;
}

// Canonical description text.
std::string_view description(ErrorModelId e);
// Short analyst label, e.g. "Omission" or "Wrong order".
std::string_view short_name(ErrorModelId e);
// "E3"
std::string tag(ErrorModelId e);
// "E.3"
std::string dotted_tag(ErrorModelId e);
// Accepts "E3", "E.3" and lower-case forms.
std::optional<ErrorModelId> parse_error_model(std::string_view text);

// ---------------------------------------------------------------------------
// Actor profiles

enum class Applicability : std::uint8_t { kApplies, kRare, kSuppressed };

std::string_view to_string(Applicability a);

struct ProfileEntry {
  Applicability applicability = Applicability::kApplies;
  std::string note;  // substitution advice when suppressed

  friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

struct ProfileTable {
  std::array<ProfileEntry, 11> entries{};

  const ProfileEntry& operator[](ErrorModelId e) const { return entries[index_of(e)]; }
  ProfileEntry& operator[](ErrorModelId e) { return entries[index_of(e)]; }

  friend bool operator==(const ProfileTable&, const ProfileTable&) = default;
};

// Which error models apply to messages involving each kind of participant.
// The sender's table governs every error model except E9, which follows the
// table of the participant producing the response (the receiver).
struct ActorProfile {
  ProfileTable human;
  ProfileTable external_system;
  ProfileTable internal;

  const ProfileTable& for_kind(ParticipantKind kind) const;
  ProfileTable& for_kind(ParticipantKind kind);

  // Human table: E4 rare, E9 suppressed (covered by E6-E8 on the response);
  // everything else applies. External systems and internal objects: all
  // apply.
  static ActorProfile default_profile();

  friend bool operator==(const ActorProfile&, const ActorProfile&) = default;
};

struct ProfileParseResult {
  std::optional<ActorProfile> profile;
  std::vector<Diagnostic> diagnostics;
};

// Profile override file, same lexical surface as model sources:
//
//   profile human {
//     E4 rare;
//     E9 suppressed "use E6-E8 on the response";
//   }
//
// Entries override the default profile; unmentioned entries keep defaults.
ProfileParseResult parse_profile(std::string_view text,
                                 std::string_view file = "<profile>");

// ---------------------------------------------------------------------------
// Candidates

enum class Variant : std::uint8_t {
  kNone,
  kTooSoon,
  kTooLate,
  kTooFew,
  kTooMany,
  kBelowMin,
  kAboveMax,
  kPerturbed,
};

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view text);

enum class LikelihoodHint : std::uint8_t { kNormal, kRare };

std::string_view to_string(LikelihoodHint h);

// Element names used for timing candidates.
inline constexpr std::string_view kSendElement = "send";
inline constexpr std::string_view kReceiveElement = "receive";
inline constexpr std::string_view kTreatmentElement = "treatment";

struct FailureModeCandidate {
  std::string interaction;
  std::optional<std::string> message;  // none for interaction-level E1/E11
  ErrorModelId error = ErrorModelId::E1;
  // Parameter name (E8), predecessor id (E2), sending participant (E1),
  // "Sender->Receiver" pair (E11), timing element (E5/E10), or none.
  std::optional<std::string> element;
  Variant variant = Variant::kNone;
  LikelihoodHint likelihood_hint = LikelihoodHint::kNormal;

  std::string id() const;

  friend bool operator==(const FailureModeCandidate&,
                         const FailureModeCandidate&) = default;
};

// "<interaction>/<message|*>/<error>/<element|->/<variant|->"
std::string candidate_id(std::string_view interaction,
                         const std::optional<std::string>& message,
                         ErrorModelId error,
                         const std::optional<std::string>& element,
                         Variant variant);

std::string pair_element(std::string_view sender, std::string_view receiver);

std::set<ErrorModelId> applicable_errors(const MessageElements& elements,
                                         const ActorProfile& profile);

struct CandidateSet {
  std::string model_name;
  std::string model_digest;
  std::vector<FailureModeCandidate> candidates;

  const FailureModeCandidate* find(std::string_view id) const;
};

// Candidates of one interaction, in enumeration order.
std::vector<FailureModeCandidate> enumerate_interaction(
    const SystemModel& model, const Interaction& interaction,
    const ActorProfile& profile);

// Deterministic list ordered by interaction, then interaction-level
// candidates before message candidates, messages in declaration order,
// error number, element, variant.
CandidateSet enumerate_candidates(const SystemModel& model,
                                  const ActorProfile& profile);

}  // namespace seqfmeca
