#include "seqfmeca/documents.hpp"

#include <algorithm>
#include <initializer_list>
#include <set>

#include "json_io.hpp"

namespace seqfmeca {

using detail::Json;

namespace detail {

std::string dump(const Json& j) {
  return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

namespace {

Json optional_string(const std::optional<std::string>& s) {
  return s ? Json(*s) : Json(nullptr);
}

}  // namespace

Json row_to_json(const WorksheetRow& r) {
  Json j;
  j["candidate_id"] = r.candidate_id;
  j["interaction"] = r.interaction;
  j["message"] = optional_string(r.message);
  j["error"] = tag(r.error);
  j["display_name"] = r.display_name;
  j["failure_mode"] = r.failure_mode;
  j["cause"] = r.cause;
  j["effect_local"] = r.effect_local;
  j["effect_upper"] = r.effect_upper;
  j["effect_system"] = r.effect_system;
  j["severity"] = r.severity ? Json(level(*r.severity)) : Json(nullptr);
  j["probability"] = r.probability ? Json(name(*r.probability)) : Json(nullptr);
  j["detection_failure_mode"] = r.detection_failure_mode;
  j["detection_effects"] = r.detection_effects;
  j["prevention"] = r.prevention;
  j["protection"] = r.protection;
  j["other_actions"] = r.other_actions;
  j["remarks"] = r.remarks;
  j["waived"] = r.waived;
  j["waiver_justification"] = r.waiver_justification;
  j["residual_severity"] =
      r.residual_severity ? Json(level(*r.residual_severity)) : Json(nullptr);
  j["residual_probability"] =
      r.residual_probability ? Json(name(*r.residual_probability)) : Json(nullptr);
  return j;
}

}  // namespace detail

namespace {

// Collects F010 diagnostics with JSON-pointer style paths.
class Reader {
 public:
  Reader(std::string_view file, std::vector<Diagnostic>& out) : file_(file), out_(out) {}

  void error(const std::string& pointer, std::string text,
             std::string_view code = code::kSchema) {
    Diagnostic d;
    d.code = std::string(code);
    d.path = file_ + "#" + pointer;
    d.text = std::move(text);
    out_.push_back(std::move(d));
  }

  std::optional<Json> parse(std::string_view text) {
    try {
      return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
      Diagnostic d;
      d.code = std::string(code::kSchema);
      d.text = "not valid JSON: " + std::string(e.what());
      SourceSpan span;
      span.file = file_;
      span.start = position(text, std::min(e.byte == 0 ? 0 : e.byte - 1, text.size()));
      span.end = span.start;
      d.span = span;
      out_.push_back(std::move(d));
      return std::nullopt;
    }
  }

  // Checks object-ness, unknown keys and required keys.
  bool object(const Json& j, const std::string& pointer,
              std::initializer_list<std::string_view> allowed,
              std::initializer_list<std::string_view> required) {
    if (!j.is_object()) {
      error(pointer, "expected an object");
      return false;
    }
    bool ok = true;
    for (const auto& [key, value] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        error(pointer + "/" + key, "unknown key '" + key + "'");
        ok = false;
      }
    }
    for (std::string_view key : required) {
      if (!j.contains(key)) {
        error(pointer, "missing required key '" + std::string(key) + "'");
        ok = false;
      }
    }
    return ok;
  }

  bool schema(const Json& j, std::string_view expected) {
    if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string()) {
      error("/schema", "missing schema identifier, expected '" + std::string(expected) + "'");
      return false;
    }
    const auto& got = j["schema"].get_ref<const std::string&>();
    if (got != expected) {
      error("/schema", "unsupported schema '" + got + "', expected '" +
                           std::string(expected) + "'");
      return false;
    }
    return true;
  }

  std::optional<std::string> string(const Json& j, const std::string& pointer) {
    if (!j.is_string()) {
      error(pointer, "expected a string");
      return std::nullopt;
    }
    return j.get<std::string>();
  }

  // Missing keys were already reported by object(); they read as empty.
  std::string string_at(const Json& obj, std::string_view key, const std::string& pointer) {
    auto it = obj.find(key);
    if (it == obj.end()) return {};
    return string(*it, pointer + "/" + std::string(key)).value_or("");
  }

 private:
  static SourcePos position(std::string_view text, std::size_t offset) {
    SourcePos p;
    p.offset = offset;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++p.line;
        p.column = 1;
      } else {
        ++p.column;
      }
    }
    return p;
  }

  std::string file_;
  std::vector<Diagnostic>& out_;
};

const std::initializer_list<std::string_view> kRowKeys = {
    "candidate_id", "interaction", "message", "error", "display_name",
    "failure_mode", "cause", "effect_local", "effect_upper", "effect_system",
    "severity", "probability", "detection_failure_mode", "detection_effects",
    "prevention", "protection", "other_actions", "remarks", "waived",
    "waiver_justification", "residual_severity", "residual_probability"};

std::optional<HarmSeverity> read_level(Reader& r, const Json& j, const std::string& pointer) {
  if (j.is_null()) return std::nullopt;
  if (j.is_number_integer()) {
    const auto v = j.get<long long>();
    if (v >= 1 && v <= 5) return static_cast<HarmSeverity>(v);
  }
  r.error(pointer, "expected a severity level 1-5 or null", code::kBadSeverity);
  return std::nullopt;
}

std::optional<Probability> read_probability(Reader& r, const Json& j,
                                            const std::string& pointer) {
  if (j.is_null()) return std::nullopt;
  if (j.is_string()) {
    if (auto p = parse_probability(j.get<std::string>())) return p;
  }
  r.error(pointer, "expected a probability level name or null", code::kBadProbability);
  return std::nullopt;
}

WorksheetRow read_row(Reader& r, const Json& j, const std::string& pointer) {
  WorksheetRow row;
  if (!r.object(j, pointer, kRowKeys, kRowKeys)) {
    if (!j.is_object()) return row;
  }
  row.candidate_id = r.string_at(j, "candidate_id", pointer);
  row.interaction = r.string_at(j, "interaction", pointer);
  if (auto it = j.find("message"); it != j.end() && !it->is_null()) {
    if (auto s = r.string(*it, pointer + "/message")) row.message = *s;
  }
  if (auto it = j.find("error"); it != j.end()) {
    auto s = r.string(*it, pointer + "/error");
    auto e = s ? parse_error_model(*s) : std::nullopt;
    if (e) {
      row.error = *e;
    } else if (s) {
      r.error(pointer + "/error", "unknown error model '" + *s + "'");
    }
  }
  row.display_name = r.string_at(j, "display_name", pointer);
  row.failure_mode = r.string_at(j, "failure_mode", pointer);
  row.cause = r.string_at(j, "cause", pointer);
  row.effect_local = r.string_at(j, "effect_local", pointer);
  row.effect_upper = r.string_at(j, "effect_upper", pointer);
  row.effect_system = r.string_at(j, "effect_system", pointer);
  if (auto it = j.find("severity"); it != j.end()) {
    row.severity = read_level(r, *it, pointer + "/severity");
  }
  if (auto it = j.find("probability"); it != j.end()) {
    row.probability = read_probability(r, *it, pointer + "/probability");
  }
  row.detection_failure_mode = r.string_at(j, "detection_failure_mode", pointer);
  row.detection_effects = r.string_at(j, "detection_effects", pointer);
  row.prevention = r.string_at(j, "prevention", pointer);
  row.protection = r.string_at(j, "protection", pointer);
  row.other_actions = r.string_at(j, "other_actions", pointer);
  row.remarks = r.string_at(j, "remarks", pointer);
  if (auto it = j.find("waived"); it != j.end()) {
    if (it->is_boolean()) {
      row.waived = it->get<bool>();
    } else {
      r.error(pointer + "/waived", "expected a boolean");
    }
  }
  row.waiver_justification = r.string_at(j, "waiver_justification", pointer);
  if (row.waived && is_blank(row.waiver_justification)) {
    r.error(pointer + "/waiver_justification", "waiver requires a justification",
            code::kEmptyWaiver);
  }
  if (auto it = j.find("residual_severity"); it != j.end()) {
    row.residual_severity = read_level(r, *it, pointer + "/residual_severity");
  }
  if (auto it = j.find("residual_probability"); it != j.end()) {
    row.residual_probability = read_probability(r, *it, pointer + "/residual_probability");
  }
  if (auto why = residual_violation(row)) {
    r.error(pointer, *why, code::kResidualInvariant);
  }
  return row;
}

}  // namespace

std::string write_worksheet(const Worksheet& ws) {
  Json j;
  j["schema"] = schema::kWorksheet;
  j["model"] = Json{{"name", ws.model_name}, {"digest", ws.model_digest}};
  j["matrix"] = ws.matrix;
  j["rows"] = Json::array();
  for (const auto& row : ws.rows) j["rows"].push_back(detail::row_to_json(row));
  return detail::dump(j);
}

Loaded<Worksheet> read_worksheet(std::string_view text, std::string_view file) {
  Loaded<Worksheet> out;
  Reader r(file, out.diagnostics);
  auto parsed = r.parse(text);
  if (!parsed) return out;
  const Json& j = *parsed;
  if (!r.schema(j, schema::kWorksheet)) return out;
  if (!r.object(j, "", {"schema", "model", "matrix", "rows"},
                {"schema", "model", "matrix", "rows"})) {
    return out;
  }
  Worksheet ws;
  const Json& model = j["model"];
  if (r.object(model, "/model", {"name", "digest"}, {"name", "digest"})) {
    ws.model_name = r.string_at(model, "name", "/model");
    ws.model_digest = r.string_at(model, "digest", "/model");
  }
  ws.matrix = r.string(j["matrix"], "/matrix").value_or("default");
  if (!j["rows"].is_array()) {
    r.error("/rows", "expected an array");
    return out;
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < j["rows"].size(); ++i) {
    const std::string pointer = "/rows/" + std::to_string(i);
    WorksheetRow row = read_row(r, j["rows"][i], pointer);
    if (!seen.insert(row.candidate_id).second) {
      r.error(pointer + "/candidate_id", "duplicate row for candidate '" +
                                             row.candidate_id + "'",
              code::kDuplicateRow);
    }
    ws.rows.push_back(std::move(row));
  }
  if (!has_errors(out.diagnostics)) out.value = std::move(ws);
  return out;
}

Loaded<AnnotationDocument> read_annotations(std::string_view text, std::string_view file) {
  Loaded<AnnotationDocument> out;
  Reader r(file, out.diagnostics);
  auto parsed = r.parse(text);
  if (!parsed) return out;
  const Json& j = *parsed;
  if (!r.schema(j, schema::kAnnotations)) return out;
  if (!r.object(j, "", {"schema", "annotations"}, {"schema", "annotations"})) return out;
  if (!j["annotations"].is_array()) {
    r.error("/annotations", "expected an array");
    return out;
  }
  AnnotationDocument doc;
  const Json& list = j["annotations"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string pointer = "/annotations/" + std::to_string(i);
    const Json& a = list[i];
    if (!r.object(a, pointer,
                  {"candidate_id", "failure_mode", "cause", "effect_local", "effect_upper",
                   "effect_system", "severity", "probability", "detection_failure_mode",
                   "detection_effects", "prevention", "protection", "other_actions",
                   "remarks", "waiver_justification", "residual_severity",
                   "residual_probability"},
                  {"candidate_id"})) {
      continue;
    }
    Annotation ann;
    ann.candidate_id = r.string_at(a, "candidate_id", pointer);
    auto text_field = [&](std::string_view key, std::optional<std::string>& to) {
      auto it = a.find(key);
      if (it == a.end()) return;
      to = r.string(*it, pointer + "/" + std::string(key));
    };
    auto level_field = [&](std::string_view key, std::optional<std::string>& to) {
      auto it = a.find(key);
      if (it == a.end()) return;
      if (it->is_number_integer()) {
        to = std::to_string(it->get<long long>());
      } else if (it->is_string()) {
        to = it->get<std::string>();
      } else {
        r.error(pointer + "/" + std::string(key), "expected a level number or name",
                code::kBadSeverity);
      }
    };
    text_field("failure_mode", ann.failure_mode);
    text_field("cause", ann.cause);
    text_field("effect_local", ann.effect_local);
    text_field("effect_upper", ann.effect_upper);
    text_field("effect_system", ann.effect_system);
    level_field("severity", ann.severity);
    text_field("probability", ann.probability);
    text_field("detection_failure_mode", ann.detection_failure_mode);
    text_field("detection_effects", ann.detection_effects);
    text_field("prevention", ann.prevention);
    text_field("protection", ann.protection);
    text_field("other_actions", ann.other_actions);
    text_field("remarks", ann.remarks);
    text_field("waiver_justification", ann.waiver_justification);
    level_field("residual_severity", ann.residual_severity);
    text_field("residual_probability", ann.residual_probability);
    doc.annotations.push_back(std::move(ann));
  }
  if (!has_errors(out.diagnostics)) out.value = std::move(doc);
  return out;
}

std::string write_annotations(const AnnotationDocument& doc) {
  Json j;
  j["schema"] = schema::kAnnotations;
  j["annotations"] = Json::array();
  for (const auto& a : doc.annotations) {
    Json e;
    e["candidate_id"] = a.candidate_id;
    auto put = [&](const char* key, const std::optional<std::string>& v) {
      if (v) e[key] = *v;
    };
    put("failure_mode", a.failure_mode);
    put("cause", a.cause);
    put("effect_local", a.effect_local);
    put("effect_upper", a.effect_upper);
    put("effect_system", a.effect_system);
    put("severity", a.severity);
    put("probability", a.probability);
    put("detection_failure_mode", a.detection_failure_mode);
    put("detection_effects", a.detection_effects);
    put("prevention", a.prevention);
    put("protection", a.protection);
    put("other_actions", a.other_actions);
    put("remarks", a.remarks);
    put("waiver_justification", a.waiver_justification);
    put("residual_severity", a.residual_severity);
    put("residual_probability", a.residual_probability);
    j["annotations"].push_back(std::move(e));
  }
  return detail::dump(j);
}

Loaded<RiskMatrix> read_matrix(std::string_view text, std::string_view file) {
  Loaded<RiskMatrix> out;
  Reader r(file, out.diagnostics);
  auto parsed = r.parse(text);
  if (!parsed) return out;
  const Json& j = *parsed;
  if (!r.schema(j, schema::kMatrix)) return out;
  if (!r.object(j, "", {"schema", "name", "cells"}, {"schema", "name", "cells"})) return out;
  RiskMatrix m;
  m.name = r.string(j["name"], "/name").value_or("");
  const Json& cells = j["cells"];
  if (!cells.is_array() || cells.size() != 5) {
    r.error("/cells", "expected 5 rows, one per severity level 1-5");
    return out;
  }
  for (std::size_t s = 0; s < 5; ++s) {
    const std::string row_ptr = "/cells/" + std::to_string(s);
    if (!cells[s].is_array() || cells[s].size() != 5) {
      r.error(row_ptr, "expected 5 cells, one per probability level F, P, O, R, I");
      continue;
    }
    for (std::size_t p = 0; p < 5; ++p) {
      const std::string ptr = row_ptr + "/" + std::to_string(p);
      auto token = r.string(cells[s][p], ptr);
      if (!token) continue;
      if (auto cls = parse_risk_class(*token)) {
        m.cells[s][p] = *cls;
      } else {
        r.error(ptr, "unknown risk class '" + *token + "'");
      }
    }
  }
  if (has_errors(out.diagnostics)) return out;
  auto monotone = validate_matrix(m);
  for (auto& d : monotone) {
    d.path = std::string(file) + "#/cells";
  }
  out.diagnostics.insert(out.diagnostics.end(), monotone.begin(), monotone.end());
  if (!has_errors(out.diagnostics)) out.value = std::move(m);
  return out;
}

std::string write_matrix(const RiskMatrix& m) {
  Json j;
  j["schema"] = schema::kMatrix;
  j["name"] = m.name;
  j["cells"] = Json::array();
  for (const auto& row : m.cells) {
    Json cells = Json::array();
    for (RiskClass c : row) cells.push_back(name(c));
    j["cells"].push_back(std::move(cells));
  }
  return detail::dump(j);
}

std::string write_candidates(const CandidateSet& set) {
  Json j;
  j["schema"] = schema::kCandidates;
  j["model"] = Json{{"name", set.model_name}, {"digest", set.model_digest}};
  j["candidates"] = Json::array();
  for (const auto& c : set.candidates) {
    Json e;
    e["id"] = c.id();
    e["interaction"] = c.interaction;
    e["message"] = c.message ? Json(*c.message) : Json(nullptr);
    e["error"] = tag(c.error);
    e["description"] = description(c.error);
    e["element"] = c.element ? Json(*c.element) : Json(nullptr);
    e["variant"] = c.variant == Variant::kNone ? Json(nullptr) : Json(to_string(c.variant));
    e["likelihood_hint"] = to_string(c.likelihood_hint);
    j["candidates"].push_back(std::move(e));
  }
  return detail::dump(j);
}

std::string write_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  auto pos = [](const SourcePos& p) {
    return Json{{"line", p.line}, {"column", p.column}, {"offset", p.offset}};
  };
  Json j;
  j["schema"] = schema::kDiagnostics;
  j["diagnostics"] = Json::array();
  for (const auto& d : diagnostics) {
    Json e;
    e["severity"] = to_string(d.severity);
    e["code"] = d.code;
    e["path"] = d.path;
    e["text"] = d.text;
    if (d.span) {
      e["span"] = Json{{"file", d.span->file},
                       {"start", pos(d.span->start)},
                       {"end", pos(d.span->end)}};
    } else {
      e["span"] = nullptr;
    }
    j["diagnostics"].push_back(std::move(e));
  }
  return detail::dump(j);
}

}  // namespace seqfmeca
