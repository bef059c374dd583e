#include "seqfmeca/error_catalog.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "seqfmeca/digest.hpp"

namespace seqfmeca {

std::string_view description(ErrorModelId e) {
  switch (e) {
    case ErrorModelId::E1:
      return "Sending of a message not belonging to the planned interaction.";
    case ErrorModelId::E2:
      return "Execution of one or several messages in a wrong order.";
    case ErrorModelId::E3:
      return "Omission of a message among an interaction.";
    case ErrorModelId::E4:
      return "Lack of an instance to receive the message.";
    case ErrorModelId::E5:
      return "Sending or receiving of a message outside its specified time "
             "limits (too soon or too late).";
    case ErrorModelId::E6:
      return "The arguments type is different from the type of parameters "
             "expected by the receiver.";
    case ErrorModelId::E7:
      return "The number of message arguments is different from the number of "
             "parameters expected by the receiver.";
    case ErrorModelId::E8:
      return "The value of message arguments is different from the value of "
             "parameters expected by the receiver.";
    case ErrorModelId::E9:
      return "The values returned by a response to a message do not fit with "
             "the expected values (for example: constant, random, out of "
             "limits, etc.).";
    case ErrorModelId::E10:
      return "Treatment of a message out of the specified time limits.";
    case ErrorModelId::E11:
      return "Lack of link between sender and receiver objects.";
  }
  return "";
}

std::string_view short_name(ErrorModelId e) {
  switch (e) {
    case ErrorModelId::E1: return "Extraneous message";
    case ErrorModelId::E2: return "Wrong order";
    case ErrorModelId::E3: return "Omission";
    case ErrorModelId::E4: return "Absent receiver";
    case ErrorModelId::E5: return "Out of time limits";
    case ErrorModelId::E6: return "Wrong argument type";
    case ErrorModelId::E7: return "Wrong argument count";
    case ErrorModelId::E8: return "Wrong argument value";
    case ErrorModelId::E9: return "Unexpected response";
    case ErrorModelId::E10: return "Treatment overrun";
    case ErrorModelId::E11: return "Missing link";
  }
  return "";
}

std::string tag(ErrorModelId e) { return "E" + std::to_string(number(e)); }

std::string dotted_tag(ErrorModelId e) {
  return "E." + std::to_string(number(e));
}

std::optional<ErrorModelId> parse_error_model(std::string_view text) {
  if (text.empty() || (text[0] != 'E' && text[0] != 'e')) return std::nullopt;
  text.remove_prefix(1);
  if (!text.empty() && text[0] == '.') text.remove_prefix(1);
  if (text.empty() || text.size() > 2) return std::nullopt;
  if (text[0] == '0') return std::nullopt;
  int n = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    n = n * 10 + (c - '0');
  }
  if (n < 1 || n > 11) return std::nullopt;
  return static_cast<ErrorModelId>(n);
}

std::string_view to_string(Applicability a) {
  switch (a) {
    case Applicability::kApplies: return "applies";
    case Applicability::kRare: return "rare";
    case Applicability::kSuppressed: return "suppressed";
  }
  return "applies";
}

const ProfileTable& ActorProfile::for_kind(ParticipantKind kind) const {
  switch (kind) {
    case ParticipantKind::kHuman: return human;
    case ParticipantKind::kExternalSystem: return external_system;
    case ParticipantKind::kInternal: return internal;
  }
  return internal;
}

ProfileTable& ActorProfile::for_kind(ParticipantKind kind) {
  return const_cast<ProfileTable&>(std::as_const(*this).for_kind(kind));
}

ActorProfile ActorProfile::default_profile() {
  ActorProfile p;
  p.human[ErrorModelId::E4] = {Applicability::kRare, ""};
  p.human[ErrorModelId::E9] = {Applicability::kSuppressed,
                               "use E6–E8 on the response"};
  return p;
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kNone: return "-";
    case Variant::kTooSoon: return "too_soon";
    case Variant::kTooLate: return "too_late";
    case Variant::kTooFew: return "too_few";
    case Variant::kTooMany: return "too_many";
    case Variant::kBelowMin: return "below_min";
    case Variant::kAboveMax: return "above_max";
    case Variant::kPerturbed: return "perturbed";
  }
  return "-";
}

std::optional<Variant> parse_variant(std::string_view text) {
  for (Variant v : {Variant::kNone, Variant::kTooSoon, Variant::kTooLate,
                    Variant::kTooFew, Variant::kTooMany, Variant::kBelowMin,
                    Variant::kAboveMax, Variant::kPerturbed}) {
    if (to_string(v) == text) return v;
  }
  return std::nullopt;
}

std::string_view to_string(LikelihoodHint h) {
  return h == LikelihoodHint::kRare ? "rare" : "normal";
}

std::string candidate_id(std::string_view interaction,
                         const std::optional<std::string>& message,
                         ErrorModelId error,
                         const std::optional<std::string>& element,
                         Variant variant) {
  std::string id(interaction);
  id += '/';
  id += message ? *message : "*";
  id += '/' + tag(error) + '/';
  id += element ? *element : "-";
  id += '/';
  id += to_string(variant);
  return id;
}

std::string FailureModeCandidate::id() const {
  return candidate_id(interaction, message, error, element, variant);
}

std::string pair_element(std::string_view sender, std::string_view receiver) {
  return std::string(sender) + "->" + std::string(receiver);
}

const FailureModeCandidate* CandidateSet::find(std::string_view id) const {
  for (const auto& c : candidates) {
    if (c.id() == id) return &c;
  }
  return nullptr;
}

std::set<ErrorModelId> applicable_errors(const MessageElements& elements,
                                         const ActorProfile& profile) {
  const ProfileTable& sender = profile.for_kind(elements.sender_kind);
  const ProfileTable& responder = profile.for_kind(elements.receiver_kind);
  const bool has_params = !elements.parameters.empty();
  const bool timed = elements.sending_event.deadline.has_value() ||
                     (elements.response && elements.response->receive_deadline);

  std::set<ErrorModelId> out;
  auto add = [&](ErrorModelId e, bool structural, const ProfileTable& table) {
    if (structural && table[e].applicability != Applicability::kSuppressed) {
      out.insert(e);
    }
  };
  add(ErrorModelId::E1, true, sender);
  add(ErrorModelId::E2, !elements.predecessors.empty(), sender);
  add(ErrorModelId::E3, true, sender);
  add(ErrorModelId::E4, true, sender);
  add(ErrorModelId::E5, timed, sender);
  add(ErrorModelId::E6, has_params, sender);
  add(ErrorModelId::E7, has_params, sender);
  add(ErrorModelId::E8, has_params, sender);
  add(ErrorModelId::E9, elements.response.has_value(), responder);
  add(ErrorModelId::E10, elements.treatment_period.has_value(), sender);
  add(ErrorModelId::E11, true, sender);
  return out;
}

std::vector<FailureModeCandidate> enumerate_interaction(
    const SystemModel& model, const Interaction& interaction,
    const ActorProfile& profile) {
  std::vector<FailureModeCandidate> out;
  auto hint = [](const ProfileTable& table, ErrorModelId e) {
    return table[e].applicability == Applicability::kRare
               ? LikelihoodHint::kRare
               : LikelihoodHint::kNormal;
  };
  auto emit = [&](const std::optional<std::string>& message, ErrorModelId e,
                  std::optional<std::string> element, Variant variant,
                  LikelihoodHint h) {
    FailureModeCandidate c;
    c.interaction = interaction.name;
    c.message = message;
    c.error = e;
    c.element = std::move(element);
    c.variant = variant;
    c.likelihood_hint = h;
    out.push_back(std::move(c));
  };

  // Interaction-level candidates: E1 per sending participant, E11 per
  // (sender, receiver) pair, both in order of first appearance.
  std::vector<std::string> senders;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& m : interaction.messages) {
    if (std::find(senders.begin(), senders.end(), m.sender) == senders.end()) {
      senders.push_back(m.sender);
    }
    auto pair = std::make_pair(m.sender, m.receiver);
    if (std::find(pairs.begin(), pairs.end(), pair) == pairs.end()) {
      pairs.push_back(std::move(pair));
    }
  }
  for (const auto& s : senders) {
    const ProfileTable& table = profile.for_kind(participant_kind(model, s));
    if (table[ErrorModelId::E1].applicability == Applicability::kSuppressed) continue;
    emit(std::nullopt, ErrorModelId::E1, s, Variant::kNone,
         hint(table, ErrorModelId::E1));
  }
  for (const auto& [s, r] : pairs) {
    const ProfileTable& table = profile.for_kind(participant_kind(model, s));
    if (table[ErrorModelId::E11].applicability == Applicability::kSuppressed) continue;
    emit(std::nullopt, ErrorModelId::E11, pair_element(s, r), Variant::kNone,
         hint(table, ErrorModelId::E11));
  }

  for (const auto& m : interaction.messages) {
    const MessageElements el = message_elements(model, interaction, m.id);
    const auto applicable = applicable_errors(el, profile);
    const ProfileTable& sender = profile.for_kind(el.sender_kind);
    const ProfileTable& responder = profile.for_kind(el.receiver_kind);
    const std::optional<std::string> msg = m.id;
    auto has = [&](ErrorModelId e) { return applicable.contains(e); };

    if (has(ErrorModelId::E2)) {
      for (const auto& p : el.predecessors) {
        emit(msg, ErrorModelId::E2, p, Variant::kNone, hint(sender, ErrorModelId::E2));
      }
    }
    if (has(ErrorModelId::E3)) {
      emit(msg, ErrorModelId::E3, std::nullopt, Variant::kNone,
           hint(sender, ErrorModelId::E3));
    }
    if (has(ErrorModelId::E4)) {
      emit(msg, ErrorModelId::E4, std::nullopt, Variant::kNone,
           hint(sender, ErrorModelId::E4));
    }
    if (has(ErrorModelId::E5)) {
      const auto h = hint(sender, ErrorModelId::E5);
      auto timing = [&](std::string_view element) {
        emit(msg, ErrorModelId::E5, std::string(element), Variant::kTooSoon, h);
        emit(msg, ErrorModelId::E5, std::string(element), Variant::kTooLate, h);
      };
      if (m.send_deadline) timing(kSendElement);
      if (m.response && m.response->receive_deadline) timing(kReceiveElement);
    }
    if (has(ErrorModelId::E6)) {
      emit(msg, ErrorModelId::E6, std::nullopt, Variant::kNone,
           hint(sender, ErrorModelId::E6));
    }
    if (has(ErrorModelId::E7)) {
      const auto h = hint(sender, ErrorModelId::E7);
      emit(msg, ErrorModelId::E7, std::nullopt, Variant::kTooFew, h);
      emit(msg, ErrorModelId::E7, std::nullopt, Variant::kTooMany, h);
    }
    if (has(ErrorModelId::E8)) {
      const auto h = hint(sender, ErrorModelId::E8);
      for (const auto& p : m.parameters) {
        if (p.interval_bounded()) {
          emit(msg, ErrorModelId::E8, p.name, Variant::kBelowMin, h);
          emit(msg, ErrorModelId::E8, p.name, Variant::kAboveMax, h);
        } else {
          emit(msg, ErrorModelId::E8, p.name, Variant::kPerturbed, h);
        }
      }
    }
    if (has(ErrorModelId::E9)) {
      emit(msg, ErrorModelId::E9, std::nullopt, Variant::kNone,
           hint(responder, ErrorModelId::E9));
    }
    if (has(ErrorModelId::E10)) {
      emit(msg, ErrorModelId::E10, std::string(kTreatmentElement), Variant::kNone,
           hint(sender, ErrorModelId::E10));
    }
  }
  return out;
}

CandidateSet enumerate_candidates(const SystemModel& model,
                                  const ActorProfile& profile) {
  CandidateSet set;
  set.model_name = model.name;
  set.model_digest = model_digest(model);
  for (const auto& in : model.interactions) {
    auto part = enumerate_interaction(model, in, profile);
    set.candidates.insert(set.candidates.end(),
                          std::make_move_iterator(part.begin()),
                          std::make_move_iterator(part.end()));
  }
  return set;
}

}  // namespace seqfmeca
