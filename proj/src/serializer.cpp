#include <sstream>

#include "seqfmeca/dsl.hpp"

namespace seqfmeca {
namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

std::string duration(const Duration& d) {
  return std::to_string(d.value) + std::string(to_string(d.unit));
}

std::string bound(const DurationBound& b) {
  return duration(b.min) + ".." + duration(b.max);
}

std::string parameters(const std::vector<Parameter>& params) {
  std::string out = "(";
  bool first = true;
  for (const auto& p : params) {
    if (!first) out += ", ";
    first = false;
    out += p.name + ": " + std::string(to_string(p.type));
    if (const auto* iv = std::get_if<NumericInterval>(&p.domain)) {
      out += " in " + format_number(iv->lower) + ".." + format_number(iv->upper);
      if (!iv->unit.empty()) out += " " + iv->unit;
    } else if (const auto* es = std::get_if<EnumSet>(&p.domain)) {
      out += " in {" + join(es->values) + "}";
    }
  }
  out += ")";
  return out;
}

}  // namespace

std::string serialize(const SystemModel& model) {
  std::ostringstream out;
  const bool empty_system = model.actors.empty() && model.objects.empty() &&
                            model.use_cases.empty();
  if (empty_system) {
    out << "system " << model.name << " {}\n";
  } else {
    out << "system " << model.name << " {\n";
    for (const auto& a : model.actors) {
      out << "  actor " << a.name << " kind " << to_string(a.kind) << ";\n";
    }
    for (const auto& o : model.objects) out << "  object " << o << ";\n";
    for (const auto& u : model.use_cases) {
      out << "  usecase " << quote(u.name);
      if (!u.linked_actors.empty()) out << " actors " << join(u.linked_actors);
      if (auto alloc = model.allocation_of(u.name)) {
        out << " allocation " << to_string(*alloc);
      }
      if (!u.description.empty()) out << " description " << quote(u.description);
      out << ";\n";
    }
    out << "}\n";
  }

  for (const auto& in : model.interactions) {
    out << "\ninteraction " << in.name;
    if (in.realizes) out << " realizes " << quote(*in.realizes);
    if (in.participants.empty() && in.messages.empty()) {
      out << " {}\n";
      continue;
    }
    out << " {\n";
    if (!in.participants.empty()) {
      out << "  participants " << join(in.participants) << ";\n";
    }
    for (const auto& m : in.messages) {
      out << "  msg " << m.id << ": " << m.sender << " -> " << m.receiver << " : "
          << (is_identifier(m.operation) ? m.operation : quote(m.operation))
          << parameters(m.parameters);
      if (!m.predecessors.empty()) out << " after " << join(m.predecessors);
      if (m.send_deadline) out << " deadline send " << bound(*m.send_deadline);
      if (m.treatment_deadline) out << " treat " << bound(*m.treatment_deadline);
      if (m.response) {
        out << " response " << parameters(m.response->values);
        if (m.response->receive_deadline) {
          out << " deadline " << bound(*m.response->receive_deadline);
        }
      }
      out << ";\n";
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace seqfmeca
