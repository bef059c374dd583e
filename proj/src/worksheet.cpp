#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_map>

#include "seqfmeca/digest.hpp"
#include "seqfmeca/fmeca.hpp"

namespace seqfmeca {

const WorksheetRow* Worksheet::find(std::string_view candidate_id) const {
  for (const auto& r : rows) {
    if (r.candidate_id == candidate_id) return &r;
  }
  return nullptr;
}

std::string default_failure_mode_text(const FailureModeCandidate& c) {
  std::string text(description(c.error));
  std::string detail;
  if (c.element) detail = *c.element;
  if (c.variant != Variant::kNone) {
    if (!detail.empty()) detail += ", ";
    detail += to_string(c.variant);
  }
  if (!detail.empty()) text += " [" + detail + "]";
  return text;
}

Worksheet init_worksheet(const SystemModel& model, const CandidateSet& candidates) {
  const std::string digest = model_digest(model);
  if (candidates.model_digest != digest || candidates.model_name != model.name) {
    throw ModelError("candidate set was enumerated from a different model (" +
                     candidates.model_digest + " vs " + digest + ")");
  }
  Worksheet ws;
  ws.model_name = model.name;
  ws.model_digest = digest;
  for (const auto& c : candidates.candidates) {
    const Interaction* in = model.find_interaction(c.interaction);
    if (!in) throw ModelError("candidate " + c.id() + " names an unknown interaction");
    WorksheetRow row;
    row.candidate_id = c.id();
    row.interaction = c.interaction;
    row.message = c.message;
    row.error = c.error;
    row.display_name = in->realizes ? *in->realizes : in->name;
    if (c.message) row.display_name += ":: " + in->at(*c.message).operation;
    row.failure_mode = default_failure_mode_text(c);
    ws.rows.push_back(std::move(row));
  }
  return ws;
}

bool is_blank(std::string_view text) {
  return text.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

std::optional<std::string> residual_violation(const WorksheetRow& row) {
  if (row.residual_severity) {
    if (!row.severity) return "residual severity given without an initial severity";
    if (level(*row.residual_severity) < level(*row.severity)) {
      return "residual severity " + display(*row.residual_severity) +
             " is worse than the initial " + display(*row.severity);
    }
  }
  if (row.residual_probability) {
    if (!row.probability) return "residual probability given without an initial probability";
    if (index_of(*row.residual_probability) < index_of(*row.probability)) {
      return "residual probability " + display(*row.residual_probability) +
             " is more likely than the initial " + display(*row.probability);
    }
  }
  return std::nullopt;
}

MergeResult merge_annotations(const Worksheet& worksheet,
                              const AnnotationDocument& document) {
  MergeResult result;
  result.worksheet = worksheet;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < worksheet.rows.size(); ++i) {
    index.emplace(worksheet.rows[i].candidate_id, i);
  }

  std::vector<Diagnostic>& diags = result.diagnostics;
  auto error = [&](std::string_view code, const std::string& id, std::string text) {
    Diagnostic d;
    d.code = std::string(code);
    d.path = "annotation/" + id;
    d.text = std::move(text);
    diags.push_back(std::move(d));
  };

  std::set<std::size_t> touched;
  for (const auto& a : document.annotations) {
    auto it = index.find(a.candidate_id);
    if (it == index.end()) {
      error(code::kUnknownCandidate, a.candidate_id,
            "annotation references unknown candidate '" + a.candidate_id + "'");
      continue;
    }
    WorksheetRow& row = result.worksheet.rows[it->second];
    touched.insert(it->second);
    auto copy = [](const std::optional<std::string>& from, std::string& to) {
      if (from) to = *from;
    };
    copy(a.failure_mode, row.failure_mode);
    copy(a.cause, row.cause);
    copy(a.effect_local, row.effect_local);
    copy(a.effect_upper, row.effect_upper);
    copy(a.effect_system, row.effect_system);
    copy(a.detection_failure_mode, row.detection_failure_mode);
    copy(a.detection_effects, row.detection_effects);
    copy(a.prevention, row.prevention);
    copy(a.protection, row.protection);
    copy(a.other_actions, row.other_actions);
    copy(a.remarks, row.remarks);

    auto severity = [&](const std::optional<std::string>& token,
                        std::optional<HarmSeverity>& to) {
      if (!token) return;
      if (auto s = parse_severity(*token)) {
        to = s;
      } else {
        error(code::kBadSeverity, a.candidate_id, "malformed severity '" + *token + "'");
      }
    };
    auto probability = [&](const std::optional<std::string>& token,
                           std::optional<Probability>& to) {
      if (!token) return;
      if (auto p = parse_probability(*token)) {
        to = p;
      } else {
        error(code::kBadProbability, a.candidate_id,
              "malformed probability '" + *token + "'");
      }
    };
    severity(a.severity, row.severity);
    probability(a.probability, row.probability);
    severity(a.residual_severity, row.residual_severity);
    probability(a.residual_probability, row.residual_probability);

    if (a.waiver_justification) {
      if (is_blank(*a.waiver_justification)) {
        error(code::kEmptyWaiver, a.candidate_id, "waiver requires a justification");
      } else {
        row.waived = true;
        row.waiver_justification = *a.waiver_justification;
      }
    }
  }
  for (std::size_t i : touched) {
    const WorksheetRow& row = result.worksheet.rows[i];
    if (auto why = residual_violation(row)) {
      error(code::kResidualInvariant, row.candidate_id, *why);
    }
  }
  if (has_errors(diags)) result.worksheet = worksheet;
  return result;
}

std::pair<RiskClass, RiskClass> residual_risk(const WorksheetRow& row,
                                              const RiskMatrix& matrix) {
  if (row.waived) throw ModelError("row " + row.candidate_id + " is waived");
  if (!row.severity || !row.probability) {
    throw ModelError("row " + row.candidate_id + " has no severity/probability");
  }
  if (auto why = residual_violation(row)) {
    throw ModelError("row " + row.candidate_id + ": " + *why);
  }
  const RiskClass before = risk_rank(*row.severity, *row.probability, matrix);
  const RiskClass after =
      risk_rank(row.residual_severity.value_or(*row.severity),
                row.residual_probability.value_or(*row.probability), matrix);
  return {before, after};
}

std::vector<Diagnostic> completeness_check(const Worksheet& worksheet,
                                           const CandidateSet& candidates) {
  std::vector<Diagnostic> out;
  auto add = [&](Severity s, std::string_view code, std::string path, std::string text) {
    Diagnostic d;
    d.severity = s;
    d.code = std::string(code);
    d.path = std::move(path);
    d.text = std::move(text);
    out.push_back(std::move(d));
  };

  if (worksheet.model_digest != candidates.model_digest) {
    add(Severity::kError, code::kModelDrift, "worksheet",
        "model changed since the worksheet was created (worksheet " +
            worksheet.model_digest + ", model " + candidates.model_digest + ")");
  }
  std::set<std::string> current;
  for (const auto& c : candidates.candidates) {
    const std::string id = c.id();
    current.insert(id);
    if (!worksheet.find(id)) {
      add(Severity::kError, code::kMissingRow, "row/" + id,
          "candidate " + id + " has no worksheet row");
    }
  }
  for (const auto& row : worksheet.rows) {
    const std::string path = "row/" + row.candidate_id;
    if (!current.contains(row.candidate_id)) {
      add(Severity::kInfo, code::kStaleRow, path,
          "row " + row.candidate_id + " no longer matches any candidate");
    } else if (!row.disposed()) {
      add(Severity::kWarning, code::kUndisposedRow, path,
          "row " + row.candidate_id + " has no severity/probability and is not waived");
    }
  }
  sort_diagnostics(out);
  return out;
}

std::vector<WorksheetRow> rank_rows(const Worksheet& worksheet, const RiskMatrix& matrix) {
  std::vector<WorksheetRow> rows = worksheet.rows;
  auto group = [](const WorksheetRow& r) {
    if (r.waived) return 2;
    return (r.severity && r.probability) ? 0 : 1;
  };
  auto key = [&](const WorksheetRow& r) {
    const int g = group(r);
    int risk = 0, sev = 0, prob = 0;
    if (g == 0) {
      risk = static_cast<int>(risk_rank(*r.severity, *r.probability, matrix));
      sev = level(*r.severity);
      prob = static_cast<int>(index_of(*r.probability));
    }
    return std::make_tuple(g, risk, sev, prob, std::cref(r.candidate_id));
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const WorksheetRow& a, const WorksheetRow& b) { return key(a) < key(b); });
  return rows;
}

}  // namespace seqfmeca
