#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqfmeca/error_catalog.hpp"
#include "seqfmeca/model.hpp"

namespace seqfmeca {

// Message id used for the event injected by E1.
inline constexpr std::string_view kExtraneous = "<extraneous>";

enum class Delivery : std::uint8_t { kDelivered, kReceiverAbsent, kLinkDown };
enum class TimingTag : std::uint8_t { kOnTime, kTooSoon, kTooLate };
enum class TreatmentTag : std::uint8_t { kWithinLimit, kOverrun };
enum class ResponseTag : std::uint8_t {
  kNominal, kConstant, kRandom, kOutOfLimits, kAbsent,
};
enum class ArgKind : std::uint8_t {
  kNominal,
  kTypeMismatch,  // tagged non-value, never a real value
  kBelowMin,
  kAboveMax,
  kPerturbed,
  kSurplus,  // argument with no matching parameter
};

std::string_view to_string(Delivery d);
std::string_view to_string(TimingTag t);
std::string_view to_string(TreatmentTag t);
std::string_view to_string(ResponseTag r);
std::string_view to_string(ArgKind k);

struct Argument {
  std::string name;
  ArgKind kind = ArgKind::kNominal;
  std::optional<double> value;  // boundary sentinels only

  friend bool operator==(const Argument&, const Argument&) = default;
};

struct TraceEvent {
  std::string message;  // message id or kExtraneous
  std::string sender;
  std::string receiver;
  std::string operation;
  std::vector<Argument> arguments;
  bool has_response = false;
  Delivery delivery = Delivery::kDelivered;
  TimingTag timing = TimingTag::kOnTime;
  TreatmentTag treatment = TreatmentTag::kWithinLimit;
  ResponseTag response = ResponseTag::kNominal;

  bool extraneous() const { return message == kExtraneous; }

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct Trace {
  std::vector<TraceEvent> events;

  std::vector<std::string> message_ids() const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

struct MutantTrace {
  std::string candidate_id;
  ErrorModelId error = ErrorModelId::E1;
  Trace trace;
  std::string note;
  // Index in `trace.events` where the deviation is reported; equal to
  // events.size() when the deviation sits after the last event.
  std::size_t anchor = 0;

  friend bool operator==(const MutantTrace&, const MutantTrace&) = default;
};

// Linearization of the precedence constraints with every tag nominal.
// Throws ModelError on cyclic constraints.
Trace nominal_trace(const Interaction& interaction);

// Concrete traces realizing one candidate. Throws ModelError when the
// candidate does not belong to the interaction or its target does not
// exist. `seed` only affects the random-response variant of E9.
std::vector<MutantTrace> mutate(const Interaction& interaction,
                                const FailureModeCandidate& candidate,
                                std::uint64_t seed = 0);

// Total mutants per error model over the candidates that belong to this
// interaction. Every error model has an entry.
std::map<ErrorModelId, std::size_t> mutant_counts(
    const Interaction& interaction,
    std::span<const FailureModeCandidate> candidates);

// Precedence constraints (message, predecessor) broken by an ordering of
// message ids. Ids not in the interaction are ignored.
std::vector<std::pair<std::string, std::string>> violated_constraints(
    const Interaction& interaction, const std::vector<std::string>& order);

}  // namespace seqfmeca
