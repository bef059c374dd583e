#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "seqfmeca/diagnostic.hpp"

namespace seqfmeca {

enum class ActorKind : std::uint8_t { kHuman, kExternalSystem };

struct Actor {
  std::string name;
  ActorKind kind = ActorKind::kHuman;

  friend bool operator==(const Actor&, const Actor&) = default;
};

enum class Allocation : std::uint8_t {
  kInsideSystem,
  kOperationalProcess,
  kExcluded,
};

struct UseCase {
  std::string name;  // the quoted title, e.g. "Install/Init Control System"
  std::vector<std::string> linked_actors;
  std::string description;

  friend bool operator==(const UseCase&, const UseCase&) = default;
};

struct AllocationEntry {
  std::string use_case;
  Allocation allocation = Allocation::kInsideSystem;

  friend bool operator==(const AllocationEntry&,
                         const AllocationEntry&) = default;
};

using BoundaryAllocation = std::vector<AllocationEntry>;

enum class TimeUnit : std::uint8_t { kMilliseconds, kSeconds, kMinutes };

// Stored as written so that serialization reproduces the source unit.
struct Duration {
  std::int64_t value = 0;
  TimeUnit unit = TimeUnit::kMilliseconds;

  std::int64_t milliseconds() const;

  friend bool operator==(const Duration&, const Duration&) = default;
};

struct DurationBound {
  Duration min;
  Duration max;

  friend bool operator==(const DurationBound&, const DurationBound&) = default;
};

enum class TypeTag : std::uint8_t { kNumber, kText, kBoolean, kEnum };

struct NumericInterval {
  double lower = 0;
  double upper = 0;
  std::string unit;  // optional, e.g. "bar"

  friend bool operator==(const NumericInterval&,
                         const NumericInterval&) = default;
};

struct EnumSet {
  std::vector<std::string> values;

  friend bool operator==(const EnumSet&, const EnumSet&) = default;
};

using Domain = std::variant<std::monostate, NumericInterval, EnumSet>;

struct Parameter {
  std::string name;
  TypeTag type = TypeTag::kNumber;
  Domain domain;

  bool interval_bounded() const {
    return std::holds_alternative<NumericInterval>(domain);
  }

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

struct Response {
  std::vector<Parameter> values;
  std::optional<DurationBound> receive_deadline;

  friend bool operator==(const Response&, const Response&) = default;
};

struct Message {
  std::string id;
  std::string sender;
  std::string receiver;
  std::string operation;
  std::vector<Parameter> parameters;
  std::vector<std::string> predecessors;  // as written in the "after" clause
  std::optional<DurationBound> send_deadline;
  std::optional<DurationBound> treatment_deadline;
  std::optional<Response> response;

  friend bool operator==(const Message&, const Message&) = default;
};

struct Interaction {
  std::string name;
  std::optional<std::string> realizes;
  std::vector<std::string> participants;
  std::vector<Message> messages;  // declaration order

  const Message* find(std::string_view message_id) const;
  const Message& at(std::string_view message_id) const;

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

struct SystemModel {
  std::string name;
  std::vector<Actor> actors;
  std::vector<std::string> objects;  // internal participants, no actor kind
  std::vector<UseCase> use_cases;
  BoundaryAllocation boundary;
  std::vector<Interaction> interactions;

  const Actor* find_actor(std::string_view name) const;
  const UseCase* find_use_case(std::string_view name) const;
  const Interaction* find_interaction(std::string_view name) const;
  std::optional<Allocation> allocation_of(std::string_view use_case) const;

  friend bool operator==(const SystemModel&, const SystemModel&) = default;
};

enum class ParticipantKind : std::uint8_t { kHuman, kExternalSystem, kInternal };

ParticipantKind participant_kind(const SystemModel& model,
                                 std::string_view participant);

std::string_view to_string(ActorKind kind);
std::string_view to_string(Allocation allocation);
std::string_view to_string(TimeUnit unit);
std::string_view to_string(TypeTag type);
std::string_view to_string(ParticipantKind kind);

bool is_identifier(std::string_view text);

// Shortest fixed-notation text that reads back to the same double.
std::string format_number(double value);

// ---------------------------------------------------------------------------
// Queries

struct EventRef {
  std::string participant;
  std::optional<DurationBound> deadline;

  friend bool operator==(const EventRef&, const EventRef&) = default;
};

// Read-only decomposition of one message into the roles it plays in its
// interaction. Always derived, never stored.
struct MessageElements {
  std::string interaction;
  std::string message;
  std::string operation;
  std::optional<std::string> previous;
  std::optional<std::string> next;
  std::vector<std::string> predecessors;
  std::string sender;
  std::string receiver;
  ParticipantKind sender_kind = ParticipantKind::kInternal;
  ParticipantKind receiver_kind = ParticipantKind::kInternal;
  EventRef sending_event;
  EventRef receiving_event;
  std::vector<Parameter> parameters;
  std::optional<Response> response;
  std::optional<DurationBound> treatment_period;

  friend bool operator==(const MessageElements&,
                         const MessageElements&) = default;
};

// Participant kinds are left as kInternal; use the SystemModel overload to
// resolve actors.
MessageElements message_elements(const Interaction& interaction,
                                 std::string_view message_id);
MessageElements message_elements(const SystemModel& model,
                                 const Interaction& interaction,
                                 std::string_view message_id);

// Direct "after" constraints of a message, ordered by the declaration order
// of the referenced messages.
std::vector<std::string> predecessors(const Interaction& interaction,
                                      std::string_view message_id);

// Stable topological sort of the precedence constraints; ties go to the
// message declared first. Throws ModelError on a cycle or an unresolved
// predecessor.
std::vector<std::string> linearize(const Interaction& interaction);

// ---------------------------------------------------------------------------
// Validation

std::vector<Diagnostic> validate_model(const SystemModel& model);

struct LintOptions {
  std::size_t concurrent_load_threshold = 3;
};

std::vector<Diagnostic> allocation_lints(const SystemModel& model,
                                         const LintOptions& options = {});

}  // namespace seqfmeca
