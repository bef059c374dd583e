#include "seqfmeca/model.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

namespace seqfmeca {

std::int64_t Duration::milliseconds() const {
  switch (unit) {
    case TimeUnit::kMilliseconds:
      return value;
    case TimeUnit::kSeconds:
      return value * 1000;
    case TimeUnit::kMinutes:
      return value * 60'000;
  }
  return value;
}

const Message* Interaction::find(std::string_view message_id) const {
  for (const auto& m : messages) {
    if (m.id == message_id) return &m;
  }
  return nullptr;
}

const Message& Interaction::at(std::string_view message_id) const {
  if (const Message* m = find(message_id)) return *m;
  throw LookupError("unknown message '" + std::string(message_id) +
                    "' in interaction '" + name + "'");
}

const Actor* SystemModel::find_actor(std::string_view actor) const {
  for (const auto& a : actors) {
    if (a.name == actor) return &a;
  }
  return nullptr;
}

const UseCase* SystemModel::find_use_case(std::string_view use_case) const {
  for (const auto& u : use_cases) {
    if (u.name == use_case) return &u;
  }
  return nullptr;
}

const Interaction* SystemModel::find_interaction(
    std::string_view interaction) const {
  for (const auto& i : interactions) {
    if (i.name == interaction) return &i;
  }
  return nullptr;
}

std::optional<Allocation> SystemModel::allocation_of(
    std::string_view use_case) const {
  for (const auto& entry : boundary) {
    if (entry.use_case == use_case) return entry.allocation;
  }
  return std::nullopt;
}

ParticipantKind participant_kind(const SystemModel& model,
                                 std::string_view participant) {
  if (const Actor* a = model.find_actor(participant)) {
    return a->kind == ActorKind::kHuman ? ParticipantKind::kHuman
                                        : ParticipantKind::kExternalSystem;
  }
  return ParticipantKind::kInternal;
}

std::string_view to_string(ActorKind kind) {
  return kind == ActorKind::kHuman ? "human" : "external";
}

std::string_view to_string(Allocation allocation) {
  switch (allocation) {
    case Allocation::kInsideSystem:
      return "inside";
    case Allocation::kOperationalProcess:
      return "process";
    case Allocation::kExcluded:
      return "excluded";
  }
  return "inside";
}

std::string_view to_string(TimeUnit unit) {
  switch (unit) {
    case TimeUnit::kMilliseconds:
      return "ms";
    case TimeUnit::kSeconds:
      return "s";
    case TimeUnit::kMinutes:
      return "min";
  }
  return "ms";
}

std::string_view to_string(TypeTag type) {
  switch (type) {
    case TypeTag::kNumber:
      return "number";
    case TypeTag::kText:
      return "text";
    case TypeTag::kBoolean:
      return "boolean";
    case TypeTag::kEnum:
      return "enum";
  }
  return "number";
}

std::string_view to_string(ParticipantKind kind) {
  switch (kind) {
    case ParticipantKind::kHuman:
      return "human";
    case ParticipantKind::kExternalSystem:
      return "external";
    case ParticipantKind::kInternal:
      return "internal";
  }
  return "internal";
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(text.front())) return false;
  return std::all_of(text.begin(), text.end(), [&](char c) {
    return alpha(c) || digit(c) || c == '_';
  });
}

std::string format_number(double value) {
  if (value == 0) value = 0;  // drop the sign of -0
  char buf[512];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (ec != std::errc{}) return "0";
  return std::string(buf, end);
}

MessageElements message_elements(const Interaction& interaction,
                                 std::string_view message_id) {
  const Message& m = interaction.at(message_id);
  MessageElements e;
  e.interaction = interaction.name;
  e.message = m.id;
  e.operation = m.operation;
  const auto order = linearize(interaction);
  const auto it = std::find(order.begin(), order.end(), m.id);
  if (it != order.begin()) e.previous = *std::prev(it);
  if (std::next(it) != order.end()) e.next = *std::next(it);
  e.predecessors = predecessors(interaction, message_id);
  e.sender = m.sender;
  e.receiver = m.receiver;
  e.sending_event = EventRef{m.sender, m.send_deadline};
  e.receiving_event = EventRef{m.receiver, std::nullopt};
  e.parameters = m.parameters;
  e.response = m.response;
  e.treatment_period = m.treatment_deadline;
  return e;
}

MessageElements message_elements(const SystemModel& model,
                                 const Interaction& interaction,
                                 std::string_view message_id) {
  MessageElements e = message_elements(interaction, message_id);
  e.sender_kind = participant_kind(model, e.sender);
  e.receiver_kind = participant_kind(model, e.receiver);
  return e;
}

std::vector<std::string> predecessors(const Interaction& interaction,
                                      std::string_view message_id) {
  const Message& m = interaction.at(message_id);
  std::vector<std::string> out;
  for (const auto& candidate : interaction.messages) {
    const bool referenced =
        std::find(m.predecessors.begin(), m.predecessors.end(),
                  candidate.id) != m.predecessors.end();
    if (referenced &&
        std::find(out.begin(), out.end(), candidate.id) == out.end()) {
      out.push_back(candidate.id);
    }
  }
  return out;
}

std::vector<std::string> linearize(const Interaction& interaction) {
  const auto& msgs = interaction.messages;
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < msgs.size(); ++i) index.emplace(msgs[i].id, i);

  std::vector<std::vector<std::size_t>> preds(msgs.size());
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    for (const auto& p : msgs[i].predecessors) {
      auto it = index.find(p);
      if (it == index.end()) {
        throw ModelError("message '" + msgs[i].id +
                         "' is constrained after unknown message '" + p + "'");
      }
      preds[i].push_back(it->second);
    }
  }

  std::vector<bool> placed(msgs.size(), false);
  std::vector<std::string> order;
  order.reserve(msgs.size());
  while (order.size() < msgs.size()) {
    bool progressed = false;
    for (std::size_t i = 0; i < msgs.size(); ++i) {
      if (placed[i]) continue;
      const bool ready = std::all_of(preds[i].begin(), preds[i].end(),
                                     [&](std::size_t p) { return placed[p]; });
      if (ready) {
        placed[i] = true;
        order.push_back(msgs[i].id);
        progressed = true;
        break;
      }
    }
    if (!progressed) {
      throw ModelError("precedence constraints of interaction '" +
                       interaction.name + "' contain a cycle");
    }
  }
  return order;
}

}  // namespace seqfmeca
