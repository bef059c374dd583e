#include <algorithm>

#include "seqfmeca/report.hpp"

namespace seqfmeca {
namespace {

std::string one_line(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
    } else if (c != '\r') {
      out += c;
    }
  }
  return out;
}

std::string argument_text(const Argument& a) {
  switch (a.kind) {
    case ArgKind::kNominal: return a.name;
    case ArgKind::kSurplus: return "[surplus]";
    case ArgKind::kBelowMin:
    case ArgKind::kAboveMax:
      if (a.value) {
        return a.name + "=" + format_number(*a.value) + " [" + std::string(to_string(a.kind)) + "]";
      }
      [[fallthrough]];
    default: return a.name + "=[" + std::string(to_string(a.kind)) + "]";
  }
}

std::string response_values(const Interaction& interaction, const TraceEvent& e) {
  const Message* m = interaction.find(e.message);
  std::string out = "(";
  if (m && m->response) {
    for (std::size_t i = 0; i < m->response->values.size(); ++i) {
      if (i) out += ", ";
      out += m->response->values[i].name;
    }
  }
  return out + ")";
}

void emit_event(std::string& out, const Interaction& interaction, const TraceEvent& e) {
  const bool lost = e.delivery != Delivery::kDelivered;
  std::string label = e.extraneous() ? "[extraneous] " + e.operation : e.operation;
  label += "(";
  for (std::size_t i = 0; i < e.arguments.size(); ++i) {
    if (i) label += ", ";
    label += argument_text(e.arguments[i]);
  }
  label += ")";
  if (lost) label += " [" + std::string(to_string(e.delivery)) + "]";
  if (e.timing != TimingTag::kOnTime) label += " [" + std::string(to_string(e.timing)) + "]";
  if (e.treatment != TreatmentTag::kWithinLimit) {
    label += " [treatment " + std::string(to_string(e.treatment)) + "]";
  }
  out += e.sender + (lost ? " ->x " : " -> ") + e.receiver + " : " + one_line(label) + "\n";
  if (e.has_response && e.response != ResponseTag::kAbsent && !lost) {
    std::string reply = "response" + response_values(interaction, e);
    if (e.response != ResponseTag::kNominal) {
      reply += " [" + std::string(to_string(e.response)) + "]";
    }
    out += e.receiver + " --> " + e.sender + " : " + one_line(reply) + "\n";
  }
}

std::vector<std::string> participants_of(const Interaction& interaction, const Trace& trace) {
  std::vector<std::string> out = interaction.participants;
  auto add = [&](const std::string& p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  for (const auto& e : trace.events) {
    add(e.sender);
    add(e.receiver);
  }
  return out;
}

std::string header(const Interaction& interaction, const Trace& trace,
                   std::string_view suffix) {
  std::string out = "@startuml\n";
  out += "title " + one_line(interaction.name);
  if (interaction.realizes) out += " (" + one_line(*interaction.realizes) + ")";
  out += std::string(suffix) + "\n";
  for (const auto& p : participants_of(interaction, trace)) out += "participant " + p + "\n";
  return out;
}

}  // namespace

std::string emit_sequence_text(const Interaction& interaction, const Trace& trace) {
  std::string out = header(interaction, trace, "");
  for (const auto& e : trace.events) emit_event(out, interaction, e);
  out += "@enduml\n";
  return out;
}

std::string emit_sequence_text(const Interaction& interaction, const MutantTrace& mutant) {
  const Trace& trace = mutant.trace;
  std::string out = header(interaction, trace, " - " + mutant.candidate_id);
  const auto& events = trace.events;

  std::string over;
  if (!events.empty()) {
    const TraceEvent& e = events[std::min(mutant.anchor, events.size() - 1)];
    over = e.sender == e.receiver ? e.sender : e.sender + ", " + e.receiver;
  } else {
    const auto parts = participants_of(interaction, trace);
    over = parts.empty() ? "System" : parts.front();
  }
  const std::string note =
      "note over " + over + " : " + one_line(mutant.candidate_id + ": " + mutant.note) + "\n";

  for (std::size_t k = 0; k < events.size(); ++k) {
    if (k == mutant.anchor) out += note;
    emit_event(out, interaction, events[k]);
  }
  if (mutant.anchor >= events.size()) out += note;
  out += "@enduml\n";
  return out;
}

}  // namespace seqfmeca
