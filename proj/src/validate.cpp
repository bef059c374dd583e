#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <unordered_map>

#include "seqfmeca/model.hpp"

namespace seqfmeca {
namespace {

class Collector {
 public:
  void error(std::string_view code, std::string path, std::string text) {
    add(Severity::kError, code, std::move(path), std::move(text));
  }
  void warning(std::string_view code, std::string path, std::string text) {
    add(Severity::kWarning, code, std::move(path), std::move(text));
  }
  std::vector<Diagnostic> finish() && {
    sort_diagnostics(out_);
    return std::move(out_);
  }

 private:
  void add(Severity s, std::string_view code, std::string path,
           std::string text) {
    Diagnostic d;
    d.severity = s;
    d.code = std::string(code);
    d.path = std::move(path);
    d.text = std::move(text);
    out_.push_back(std::move(d));
  }
  std::vector<Diagnostic> out_;
};

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

void check_identifier(Collector& c, std::string_view name,
                      const std::string& path, std::string_view what) {
  if (!is_identifier(name)) {
    c.error(code::kInvalidIdentifier, path,
            std::string(what) + " " + quoted(name) +
                " is not a valid identifier");
  }
}

void check_bound(Collector& c, const DurationBound& b, const std::string& path,
                 std::string_view what) {
  if (b.min.value < 0 || b.max.value < 0) {
    c.error(code::kBadDurationBound, path,
            std::string(what) + " has a negative duration");
  } else if (b.min.milliseconds() > b.max.milliseconds()) {
    c.error(code::kBadDurationBound, path,
            std::string(what) + " has min greater than max");
  }
}

void check_parameters(Collector& c, const std::vector<Parameter>& params,
                      const std::string& base) {
  std::set<std::string_view> seen;
  for (const auto& p : params) {
    const std::string path = base + "/param/" + p.name;
    check_identifier(c, p.name, path, "parameter");
    if (!seen.insert(p.name).second) {
      c.error(code::kDuplicateParameter, path,
              "duplicate parameter " + quoted(p.name));
    }
    if (const auto* iv = std::get_if<NumericInterval>(&p.domain)) {
      if (p.type != TypeTag::kNumber) {
        c.error(code::kBadDomain, path,
                "numeric interval on non-number parameter " + quoted(p.name));
      }
      if (!std::isfinite(iv->lower) || !std::isfinite(iv->upper)) {
        c.error(code::kBadDomain, path, "interval bounds must be finite");
      } else if (iv->lower > iv->upper) {
        c.error(code::kBadDomain, path,
                "interval lower bound exceeds upper bound");
      }
      if (!iv->unit.empty()) check_identifier(c, iv->unit, path, "unit");
    } else if (const auto* es = std::get_if<EnumSet>(&p.domain)) {
      if (p.type != TypeTag::kEnum) {
        c.error(code::kBadDomain, path,
                "enumerated domain on non-enum parameter " + quoted(p.name));
      }
      if (es->values.empty()) {
        c.error(code::kBadDomain, path, "enumerated domain is empty");
      }
      std::set<std::string_view> values;
      for (const auto& v : es->values) {
        check_identifier(c, v, path, "enum value");
        if (!values.insert(v).second) {
          c.error(code::kBadDomain, path, "duplicate enum value " + quoted(v));
        }
      }
    }
  }
}

// Tarjan's SCC over the resolved predecessor edges of one interaction.
std::vector<std::vector<std::size_t>> cyclic_components(
    const std::vector<std::vector<std::size_t>>& edges) {
  const std::size_t n = edges.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> result;
  int counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : edges[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> component;
      std::size_t w = 0;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != v);
      const bool self_loop =
          std::find(edges[v].begin(), edges[v].end(), v) != edges[v].end();
      if (component.size() > 1 || self_loop) {
        std::sort(component.begin(), component.end());
        result.push_back(std::move(component));
      }
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  return result;
}

void check_interaction(Collector& c, const SystemModel& model,
                       const Interaction& in) {
  const std::string base = "interaction/" + in.name;
  check_identifier(c, in.name, base, "interaction");

  if (in.realizes && !model.find_use_case(*in.realizes)) {
    c.error(code::kUnresolvedUseCase, base,
            "interaction realizes undeclared use case " + quoted(*in.realizes));
  }

  std::set<std::string_view> participants;
  for (const auto& p : in.participants) {
    if (!participants.insert(p).second) continue;
    const bool declared =
        model.find_actor(p) != nullptr ||
        std::find(model.objects.begin(), model.objects.end(), p) !=
            model.objects.end();
    if (!declared) {
      c.error(code::kUnresolvedParticipant, base + "/participant/" + p,
              "participant " + quoted(p) +
                  " is neither a declared actor nor an object");
    }
  }

  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < in.messages.size(); ++i) {
    const Message& m = in.messages[i];
    const std::string path = base + "/msg/" + m.id;
    check_identifier(c, m.id, path, "message id");
    if (!index.emplace(m.id, i).second) {
      c.error(code::kDuplicateMessage, path, "duplicate message id " + quoted(m.id));
    }
    for (const auto* end : {&m.sender, &m.receiver}) {
      if (!participants.contains(*end)) {
        c.error(code::kEndpointNotParticipant, path,
                quoted(*end) + " is not a participant of the interaction");
      }
    }
    if (m.operation.empty()) {
      c.error(code::kInvalidIdentifier, path, "message has an empty operation");
    }
    check_parameters(c, m.parameters, path);
    if (m.send_deadline) check_bound(c, *m.send_deadline, path, "send deadline");
    if (m.treatment_deadline) {
      check_bound(c, *m.treatment_deadline, path, "treatment deadline");
    }
    if (m.response) {
      check_parameters(c, m.response->values, path + "/response");
      if (m.response->receive_deadline) {
        check_bound(c, *m.response->receive_deadline, path + "/response",
                    "response deadline");
      }
    }
  }

  std::vector<std::vector<std::size_t>> edges(in.messages.size());
  for (std::size_t i = 0; i < in.messages.size(); ++i) {
    const Message& m = in.messages[i];
    for (const auto& p : m.predecessors) {
      auto it = index.find(p);
      if (it == index.end()) {
        c.error(code::kUnresolvedPredecessor, base + "/msg/" + m.id,
                "message " + quoted(m.id) + " is constrained after unknown message " +
                    quoted(p));
      } else {
        edges[it->second].push_back(i);
      }
    }
  }
  for (const auto& component : cyclic_components(edges)) {
    std::string members;
    for (std::size_t k : component) {
      if (!members.empty()) members += ", ";
      members += in.messages[k].id;
    }
    c.error(code::kPrecedenceCycle, base + "/msg/" + in.messages[component.front()].id,
            "precedence cycle among messages " + members);
  }
}

}  // namespace

std::vector<Diagnostic> validate_model(const SystemModel& model) {
  Collector c;
  check_identifier(c, model.name, "system", "system name");

  std::set<std::string_view> participants;
  for (const auto& a : model.actors) {
    const std::string path = "actor/" + a.name;
    check_identifier(c, a.name, path, "actor");
    if (!participants.insert(a.name).second) {
      c.error(code::kDuplicateParticipant, path, "duplicate participant " + quoted(a.name));
    }
  }
  for (const auto& o : model.objects) {
    const std::string path = "object/" + o;
    check_identifier(c, o, path, "object");
    if (!participants.insert(o).second) {
      c.error(code::kDuplicateParticipant, path, "duplicate participant " + quoted(o));
    }
  }

  std::set<std::string_view> use_cases;
  for (const auto& u : model.use_cases) {
    const std::string path = "usecase/" + u.name;
    if (u.name.empty()) {
      c.error(code::kInvalidIdentifier, path, "use case title is empty");
    }
    if (!use_cases.insert(u.name).second) {
      c.error(code::kDuplicateUseCase, path, "duplicate use case " + quoted(u.name));
    }
    for (const auto& actor : u.linked_actors) {
      if (!model.find_actor(actor)) {
        c.error(code::kUnresolvedActor, path,
                "use case links undeclared actor " + quoted(actor));
      }
    }
  }

  std::set<std::string_view> allocated;
  for (const auto& entry : model.boundary) {
    const std::string path = "allocation/" + entry.use_case;
    if (!model.find_use_case(entry.use_case)) {
      c.error(code::kBadAllocation, path,
              "allocation for undeclared use case " + quoted(entry.use_case));
    } else if (!allocated.insert(entry.use_case).second) {
      c.error(code::kBadAllocation, path,
              "use case " + quoted(entry.use_case) + " is allocated more than once");
    }
  }

  std::set<std::string_view> interactions;
  for (const auto& in : model.interactions) {
    if (!interactions.insert(in.name).second) {
      c.error(code::kDuplicateInteraction, "interaction/" + in.name,
              "duplicate interaction " + quoted(in.name));
    }
    check_interaction(c, model, in);
  }
  return std::move(c).finish();
}

std::vector<Diagnostic> allocation_lints(const SystemModel& model,
                                         const LintOptions& options) {
  Collector c;
  for (const auto& u : model.use_cases) {
    const std::string path = "usecase/" + u.name;
    if (!model.allocation_of(u.name)) {
      c.warning(code::kUnallocatedUseCase, path,
                "use case " + quoted(u.name) + " has no boundary allocation");
    }
    if (u.linked_actors.empty()) {
      c.warning(code::kOrphanUseCase, path,
                "use case " + quoted(u.name) + " is linked to no actor");
    }
  }
  for (const auto& a : model.actors) {
    if (a.kind != ActorKind::kHuman) continue;
    std::size_t load = 0;
    for (const auto& u : model.use_cases) {
      if (std::find(u.linked_actors.begin(), u.linked_actors.end(), a.name) !=
          u.linked_actors.end()) {
        ++load;
      }
    }
    if (load >= options.concurrent_load_threshold) {
      c.warning(code::kConcurrentLoad, "actor/" + a.name,
                "human actor " + quoted(a.name) + " is linked to " +
                    std::to_string(load) +
                    " use cases and may have to handle them concurrently");
    }
  }
  for (const auto& in : model.interactions) {
    if (!in.realizes) continue;
    if (model.allocation_of(*in.realizes) == Allocation::kExcluded) {
      c.warning(code::kExcludedRealized, "interaction/" + in.name,
                "interaction realizes use case " + quoted(*in.realizes) +
                    " which is excluded from the system boundary");
    }
  }
  return std::move(c).finish();
}

}  // namespace seqfmeca
