#include "seqfmeca/trace.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

namespace seqfmeca {

std::string_view to_string(Delivery d) {
  switch (d) {
    case Delivery::kDelivered: return "delivered";
    case Delivery::kReceiverAbsent: return "receiver_absent";
    case Delivery::kLinkDown: return "link_down";
  }
  return "delivered";
}

std::string_view to_string(TimingTag t) {
  switch (t) {
    case TimingTag::kOnTime: return "on_time";
    case TimingTag::kTooSoon: return "too_soon";
    case TimingTag::kTooLate: return "too_late";
  }
  return "on_time";
}

std::string_view to_string(TreatmentTag t) {
  return t == TreatmentTag::kOverrun ? "overrun" : "within_limit";
}

std::string_view to_string(ResponseTag r) {
  switch (r) {
    case ResponseTag::kNominal: return "nominal";
    case ResponseTag::kConstant: return "constant";
    case ResponseTag::kRandom: return "random";
    case ResponseTag::kOutOfLimits: return "out_of_limits";
    case ResponseTag::kAbsent: return "absent";
  }
  return "nominal";
}

std::string_view to_string(ArgKind k) {
  switch (k) {
    case ArgKind::kNominal: return "nominal";
    case ArgKind::kTypeMismatch: return "type_mismatch";
    case ArgKind::kBelowMin: return "below_min";
    case ArgKind::kAboveMax: return "above_max";
    case ArgKind::kPerturbed: return "perturbed";
    case ArgKind::kSurplus: return "surplus";
  }
  return "nominal";
}

std::vector<std::string> Trace::message_ids() const {
  std::vector<std::string> ids;
  ids.reserve(events.size());
  for (const auto& e : events) ids.push_back(e.message);
  return ids;
}

namespace {

TraceEvent nominal_event(const Message& m) {
  TraceEvent e;
  e.message = m.id;
  e.sender = m.sender;
  e.receiver = m.receiver;
  e.operation = m.operation;
  for (const auto& p : m.parameters) e.arguments.push_back({p.name, ArgKind::kNominal, {}});
  e.has_response = m.response.has_value();
  return e;
}

std::size_t position_of(const Trace& trace, std::string_view id) {
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    if (trace.events[i].message == id) return i;
  }
  throw ModelError("message '" + std::string(id) + "' is not in the trace");
}

// Decimal places needed to write the interval bounds; sentinels step one
// unit of that granularity outside the interval.
int granularity_digits(const NumericInterval& iv) {
  int digits = 0;
  for (double v : {iv.lower, iv.upper}) {
    const std::string s = format_number(v);
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
      digits = std::max(digits, static_cast<int>(s.size() - dot - 1));
    }
  }
  return std::min(digits, 15);
}

double step_outside(double bound, int digits, int direction) {
  const double scale = std::pow(10.0, digits);
  return (std::round(bound * scale) + direction) / scale;
}

Trace reorder(const Trace& nominal, const std::vector<std::string>& order) {
  Trace out;
  for (const auto& id : order) out.events.push_back(nominal.events[position_of(nominal, id)]);
  return out;
}

// Orders that break (m after p). Tries, in turn: m moved right before p, p
// moved right after m, and a stable linearization with that one constraint
// reversed. The first candidate breaking only the targeted constraint wins;
// when the constraint is also implied through other paths none does, and the
// first candidate is used.
std::vector<std::string> wrong_order(const Interaction& in,
                                     const std::vector<std::string>& nominal,
                                     const std::string& m, const std::string& p) {
  const auto im = static_cast<std::size_t>(
      std::find(nominal.begin(), nominal.end(), m) - nominal.begin());
  const auto ip = static_cast<std::size_t>(
      std::find(nominal.begin(), nominal.end(), p) - nominal.begin());

  std::vector<std::vector<std::string>> options;

  std::vector<std::string> a = nominal;
  a.erase(a.begin() + static_cast<std::ptrdiff_t>(im));
  a.insert(a.begin() + static_cast<std::ptrdiff_t>(ip), m);
  options.push_back(std::move(a));

  std::vector<std::string> b = nominal;
  b.erase(b.begin() + static_cast<std::ptrdiff_t>(ip));
  b.insert(b.begin() + static_cast<std::ptrdiff_t>(im), p);
  options.push_back(std::move(b));

  // Linearization with the targeted edge reversed.
  std::unordered_map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < nominal.size(); ++i) rank[nominal[i]] = i;
  std::vector<std::vector<std::size_t>> preds(nominal.size());
  for (const auto& msg : in.messages) {
    for (const auto& q : msg.predecessors) {
      if (msg.id == m && q == p) {
        preds[rank[p]].push_back(rank[m]);
      } else {
        preds[rank[msg.id]].push_back(rank[q]);
      }
    }
  }
  std::vector<bool> placed(nominal.size(), false);
  std::vector<std::string> c;
  while (c.size() < nominal.size()) {
    bool progressed = false;
    for (std::size_t i = 0; i < nominal.size(); ++i) {
      if (placed[i]) continue;
      if (std::all_of(preds[i].begin(), preds[i].end(),
                      [&](std::size_t k) { return placed[k]; })) {
        placed[i] = true;
        c.push_back(nominal[i]);
        progressed = true;
        break;
      }
    }
    if (!progressed) break;
  }
  if (c.size() == nominal.size()) options.push_back(std::move(c));

  for (const auto& option : options) {
    if (violated_constraints(in, option).size() == 1) return option;
  }
  return options.front();
}

std::string describe_message(const Message& m) {
  return m.id + " (" + m.operation + ")";
}

}  // namespace

Trace nominal_trace(const Interaction& interaction) {
  Trace trace;
  for (const auto& id : linearize(interaction)) {
    trace.events.push_back(nominal_event(interaction.at(id)));
  }
  return trace;
}

std::vector<std::pair<std::string, std::string>> violated_constraints(
    const Interaction& interaction, const std::vector<std::string>& order) {
  std::unordered_map<std::string_view, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos.emplace(order[i], i);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& m : interaction.messages) {
    auto im = pos.find(m.id);
    if (im == pos.end()) continue;
    for (const auto& p : m.predecessors) {
      auto ip = pos.find(p);
      if (ip != pos.end() && ip->second > im->second) out.emplace_back(m.id, p);
    }
  }
  return out;
}

std::vector<MutantTrace> mutate(const Interaction& interaction,
                                const FailureModeCandidate& candidate,
                                std::uint64_t seed) {
  if (candidate.interaction != interaction.name) {
    throw ModelError("candidate " + candidate.id() +
                     " does not belong to interaction '" + interaction.name + "'");
  }
  const Trace nominal = nominal_trace(interaction);
  const std::string id = candidate.id();
  std::vector<MutantTrace> out;
  auto push = [&](Trace trace, std::string note, std::size_t anchor) {
    MutantTrace mt;
    mt.candidate_id = id;
    mt.error = candidate.error;
    mt.trace = std::move(trace);
    mt.note = std::move(note);
    mt.anchor = anchor;
    out.push_back(std::move(mt));
  };

  const Message* msg = nullptr;
  std::size_t at = 0;
  if (candidate.message) {
    msg = interaction.find(*candidate.message);
    if (!msg) {
      throw ModelError("candidate " + id + " targets unknown message '" +
                       *candidate.message + "'");
    }
    at = position_of(nominal, msg->id);
  }
  auto require_message = [&] {
    if (!msg) throw ModelError("candidate " + id + " needs a message");
  };
  auto require = [&](bool ok, std::string_view what) {
    if (!ok) throw ModelError("candidate " + id + ": " + std::string(what));
  };

  switch (candidate.error) {
    case ErrorModelId::E1: {
      require(candidate.element.has_value(), "E1 needs a sending participant");
      const std::string& sender = *candidate.element;
      TraceEvent extra;
      extra.message = std::string(kExtraneous);
      extra.sender = sender;
      extra.receiver = sender;
      for (const auto& e : nominal.events) {
        if (e.sender == sender) {
          extra.receiver = e.receiver;
          break;
        }
      }
      require(std::any_of(nominal.events.begin(), nominal.events.end(),
                          [&](const TraceEvent& e) { return e.sender == sender; }),
              "E1 participant sends no message in this interaction");
      extra.operation = "unplanned message";
      for (std::size_t k = 0; k <= nominal.events.size(); ++k) {
        Trace t = nominal;
        t.events.insert(t.events.begin() + static_cast<std::ptrdiff_t>(k), extra);
        push(std::move(t),
             "E1: " + sender + " sends a message not belonging to the interaction (position " +
                 std::to_string(k) + ")",
             k);
      }
      break;
    }
    case ErrorModelId::E2: {
      require_message();
      require(candidate.element.has_value(), "E2 needs a predecessor");
      const std::string& p = *candidate.element;
      require(std::find(msg->predecessors.begin(), msg->predecessors.end(), p) !=
                  msg->predecessors.end(),
              "E2 target is not a direct predecessor");
      const auto order = wrong_order(interaction, nominal.message_ids(), msg->id, p);
      Trace t = reorder(nominal, order);
      const std::size_t anchor = std::min(position_of(t, msg->id), position_of(t, p));
      push(std::move(t),
           "E2: " + describe_message(*msg) + " executed before " +
               describe_message(interaction.at(p)),
           anchor);
      break;
    }
    case ErrorModelId::E3: {
      require_message();
      Trace t = nominal;
      t.events.erase(t.events.begin() + static_cast<std::ptrdiff_t>(at));
      push(std::move(t), "E3: omission of " + describe_message(*msg), at);
      break;
    }
    case ErrorModelId::E4: {
      require_message();
      Trace t = nominal;
      t.events[at].delivery = Delivery::kReceiverAbsent;
      if (t.events[at].has_response) t.events[at].response = ResponseTag::kAbsent;
      push(std::move(t), "E4: no instance of " + msg->receiver + " to receive " + msg->id, at);
      break;
    }
    case ErrorModelId::E5: {
      require_message();
      require(candidate.variant == Variant::kTooSoon || candidate.variant == Variant::kTooLate,
              "E5 needs a too_soon/too_late variant");
      const bool send = candidate.element == std::string(kSendElement);
      const bool receive = candidate.element == std::string(kReceiveElement);
      require((send && msg->send_deadline) ||
                  (receive && msg->response && msg->response->receive_deadline),
              "E5 element has no deadline");
      Trace t = nominal;
      t.events[at].timing =
          candidate.variant == Variant::kTooSoon ? TimingTag::kTooSoon : TimingTag::kTooLate;
      push(std::move(t),
           "E5: " + std::string(send ? "sending" : "receiving") + " of " + msg->id + " " +
               std::string(to_string(candidate.variant)),
           at);
      break;
    }
    case ErrorModelId::E6: {
      require_message();
      require(!msg->parameters.empty(), "E6 needs parameters");
      for (std::size_t k = 0; k < msg->parameters.size(); ++k) {
        Trace t = nominal;
        t.events[at].arguments[k].kind = ArgKind::kTypeMismatch;
        push(std::move(t),
             "E6: argument " + msg->parameters[k].name + " of " + msg->id +
                 " has the wrong type (expected " +
                 std::string(to_string(msg->parameters[k].type)) + ")",
             at);
      }
      break;
    }
    case ErrorModelId::E7: {
      require_message();
      require(!msg->parameters.empty(), "E7 needs parameters");
      Trace t = nominal;
      if (candidate.variant == Variant::kTooFew) {
        t.events[at].arguments.pop_back();
        push(std::move(t), "E7: " + msg->id + " sent with one argument missing", at);
      } else if (candidate.variant == Variant::kTooMany) {
        t.events[at].arguments.push_back({"<surplus>", ArgKind::kSurplus, {}});
        push(std::move(t), "E7: " + msg->id + " sent with one surplus argument", at);
      } else {
        require(false, "E7 needs a too_few/too_many variant");
      }
      break;
    }
    case ErrorModelId::E8: {
      require_message();
      require(candidate.element.has_value(), "E8 needs a parameter");
      const auto it = std::find_if(msg->parameters.begin(), msg->parameters.end(),
                                   [&](const Parameter& p) { return p.name == *candidate.element; });
      require(it != msg->parameters.end(), "E8 parameter does not exist");
      const auto k = static_cast<std::size_t>(it - msg->parameters.begin());
      Trace t = nominal;
      Argument& arg = t.events[at].arguments[k];
      std::string detail;
      if (candidate.variant == Variant::kPerturbed) {
        arg.kind = ArgKind::kPerturbed;
        detail = "perturbed";
      } else {
        const auto* iv = std::get_if<NumericInterval>(&it->domain);
        require(iv != nullptr, "E8 bound variant needs an interval domain");
        const int digits = granularity_digits(*iv);
        if (candidate.variant == Variant::kBelowMin) {
          arg.kind = ArgKind::kBelowMin;
          arg.value = step_outside(iv->lower, digits, -1);
          detail = "below min (" + format_number(*arg.value) + " < " + format_number(iv->lower) + ")";
        } else if (candidate.variant == Variant::kAboveMax) {
          arg.kind = ArgKind::kAboveMax;
          arg.value = step_outside(iv->upper, digits, +1);
          detail = "above max (" + format_number(*arg.value) + " > " + format_number(iv->upper) + ")";
        } else {
          require(false, "E8 needs below_min/above_max/perturbed");
        }
        if (!iv->unit.empty()) detail.insert(detail.size() - 1, " " + iv->unit);
      }
      push(std::move(t), "E8: argument " + it->name + " of " + msg->id + " " + detail, at);
      break;
    }
    case ErrorModelId::E9: {
      require_message();
      require(msg->response.has_value(), "E9 needs a response");
      for (ResponseTag tag : {ResponseTag::kConstant, ResponseTag::kRandom,
                              ResponseTag::kOutOfLimits}) {
        Trace t = nominal;
        t.events[at].response = tag;
        std::string note = "E9: response to " + msg->id + " is " + std::string(to_string(tag));
        if (tag == ResponseTag::kRandom) {
          std::mt19937_64 rng(seed);
          note += " (seed=" + std::to_string(seed) + ", draw=" + std::to_string(rng()) + ")";
        }
        push(std::move(t), std::move(note), at);
      }
      break;
    }
    case ErrorModelId::E10: {
      require_message();
      require(msg->treatment_deadline.has_value(), "E10 needs a treatment deadline");
      Trace t = nominal;
      t.events[at].treatment = TreatmentTag::kOverrun;
      push(std::move(t), "E10: treatment of " + msg->id + " overruns its time limit", at);
      break;
    }
    case ErrorModelId::E11: {
      require(candidate.element.has_value(), "E11 needs a participant pair");
      Trace t = nominal;
      std::optional<std::size_t> first;
      for (std::size_t k = 0; k < t.events.size(); ++k) {
        auto& e = t.events[k];
        if (pair_element(e.sender, e.receiver) != *candidate.element) continue;
        e.delivery = Delivery::kLinkDown;
        if (e.has_response) e.response = ResponseTag::kAbsent;
        if (!first) first = k;
      }
      require(first.has_value(), "E11 pair exchanges no message");
      push(std::move(t), "E11: no link " + *candidate.element, *first);
      break;
    }
  }
  return out;
}

std::map<ErrorModelId, std::size_t> mutant_counts(
    const Interaction& interaction,
    std::span<const FailureModeCandidate> candidates) {
  std::map<ErrorModelId, std::size_t> counts;
  for (ErrorModelId e : kAllErrorModels) counts[e] = 0;
  for (const auto& c : candidates) {
    if (c.interaction != interaction.name) continue;
    counts[c.error] += mutate(interaction, c).size();
  }
  return counts;
}

}  // namespace seqfmeca
