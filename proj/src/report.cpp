#include "seqfmeca/report.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "json_io.hpp"
#include "seqfmeca/documents.hpp"

namespace seqfmeca {

using detail::Json;

std::string_view to_string(ReportFormat f) {
  switch (f) {
    case ReportFormat::kMarkdown: return "markdown";
    case ReportFormat::kCsv: return "csv";
    case ReportFormat::kJson: return "json";
  }
  return "markdown";
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "markdown" || text == "md") return ReportFormat::kMarkdown;
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  return std::nullopt;
}

namespace {

bool rated(const WorksheetRow& r) { return !r.waived && r.severity && r.probability; }

std::optional<RiskClass> risk_of(const WorksheetRow& r, const RiskMatrix& m) {
  if (!rated(r)) return std::nullopt;
  return risk_rank(*r.severity, *r.probability, m);
}

std::optional<RiskClass> residual_of(const WorksheetRow& r, const RiskMatrix& m) {
  if (!rated(r) || (!r.residual_severity && !r.residual_probability)) return std::nullopt;
  if (residual_violation(r)) return std::nullopt;
  return residual_risk(r, m).second;
}

std::string failure_mode_cell(const WorksheetRow& r) {
  const std::string dotted = "(" + dotted_tag(r.error) + ")";
  if (r.failure_mode.find(dotted) != std::string::npos) return r.failure_mode;
  if (r.failure_mode.empty()) return std::string(short_name(r.error)) + " " + dotted;
  return r.failure_mode + " " + dotted;
}

// Rows selected for a report, in rank order.
std::vector<WorksheetRow> select_rows(const Worksheet& ws, const RiskMatrix& m,
                                      bool include_waived, std::optional<std::size_t> top_n) {
  if (top_n && *top_n == 0) throw std::invalid_argument("top_n must be at least 1");
  std::vector<WorksheetRow> out;
  for (auto& r : rank_rows(ws, m)) {
    if (r.waived && !include_waived) continue;
    out.push_back(std::move(r));
  }
  if (top_n && out.size() > *top_n) out.resize(*top_n);
  return out;
}

std::string md_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '|': out += "\\|"; break;
      case '\n': out += "<br>"; break;
      case '\r': break;
      default: out += c;
    }
  }
  return out;
}

std::string lettered(std::initializer_list<std::string_view> parts) {
  std::string out;
  char letter = 'a';
  for (std::string_view p : parts) {
    if (!p.empty()) {
      if (!out.empty()) out += "<br>";
      out += letter;
      out += ". ";
      out += md_escape(p);
    }
    ++letter;
  }
  return out;
}

std::string risk_cell(const WorksheetRow& r, const RiskMatrix& m) {
  if (r.waived) return "waived: " + md_escape(r.waiver_justification);
  auto cls = risk_of(r, m);
  if (!cls) return "";
  std::string out(name(*cls));
  if (auto after = residual_of(r, m)) out += " (residual: " + std::string(name(*after)) + ")";
  return out;
}

constexpr std::string_view kMarkdownHeader =
    "| Interaction/Message | Failure mode (error) | Cause | Effects | Severity | "
    "Probability | Risk class | Possible detection means (online) | Potential solutions |\n"
    "|---|---|---|---|---|---|---|---|---|\n";

std::string emit_markdown(const Worksheet& ws, const RiskMatrix& m,
                          const std::vector<WorksheetRow>& rows) {
  std::string out = "# FMECA: " + md_escape(ws.model_name) + "\n\n";
  out += "Model digest: `" + ws.model_digest + "`  \n";
  out += "Risk matrix: " + md_escape(m.name) + "\n";

  // Interactions in worksheet order; rows inside each keep rank order.
  std::vector<std::string> order;
  for (const auto& r : ws.rows) {
    if (std::find(order.begin(), order.end(), r.interaction) == order.end()) {
      order.push_back(r.interaction);
    }
  }
  bool any = false;
  for (const auto& interaction : order) {
    std::string table;
    for (const auto& r : rows) {
      if (r.interaction != interaction) continue;
      table += "| " + md_escape(r.display_name) + " | " + md_escape(failure_mode_cell(r)) +
               " | " + md_escape(r.cause) + " | " +
               lettered({r.effect_local, r.effect_upper, r.effect_system}) + " | " +
               (r.severity ? display(*r.severity) : "") + " | " +
               (r.probability ? display(*r.probability) : "") + " | " + risk_cell(r, m) +
               " | " + lettered({r.detection_failure_mode, r.detection_effects}) + " | " +
               lettered({r.prevention, r.protection, r.other_actions, r.remarks}) + " |\n";
    }
    if (table.empty()) continue;
    any = true;
    out += "\n## " + md_escape(interaction) + "\n\n";
    out += kMarkdownHeader;
    out += table;
  }
  if (!any) {
    out += "\n";
    out += kMarkdownHeader;
  }
  return out;
}

std::string level_text(const std::optional<HarmSeverity>& s) {
  return s ? std::to_string(level(*s)) : "";
}

std::string probability_text(const std::optional<Probability>& p) {
  return p ? std::string(name(*p)) : "";
}

std::string emit_csv(const RiskMatrix& m, const std::vector<WorksheetRow>& rows) {
  std::string out = csv_record(
      {"candidate_id", "interaction", "message", "error", "interaction_message",
       "failure_mode", "cause", "effect_local", "effect_upper", "effect_system", "severity",
       "probability", "risk_class", "detection_failure_mode", "detection_effects",
       "prevention", "protection", "other_actions", "remarks", "waived",
       "waiver_justification", "residual_severity", "residual_probability",
       "residual_risk_class"});
  for (const auto& r : rows) {
    auto cls = risk_of(r, m);
    auto after = residual_of(r, m);
    out += csv_record({r.candidate_id, r.interaction, r.message.value_or(""),
                       dotted_tag(r.error), r.display_name, failure_mode_cell(r), r.cause,
                       r.effect_local, r.effect_upper, r.effect_system,
                       level_text(r.severity), probability_text(r.probability),
                       cls ? std::string(name(*cls)) : "", r.detection_failure_mode,
                       r.detection_effects, r.prevention, r.protection, r.other_actions,
                       r.remarks, r.waived ? "true" : "false", r.waiver_justification,
                       level_text(r.residual_severity),
                       probability_text(r.residual_probability),
                       after ? std::string(name(*after)) : ""});
  }
  return out;
}

Json model_ref(const Worksheet& ws) {
  return Json{{"name", ws.model_name}, {"digest", ws.model_digest}};
}

Json ranked_row(const WorksheetRow& r, const RiskMatrix& m, std::size_t rank) {
  Json j;
  j["rank"] = rank;
  Json row = detail::row_to_json(r);
  for (auto& [k, v] : row.items()) j[k] = v;
  auto cls = risk_of(r, m);
  auto after = residual_of(r, m);
  j["risk_class"] = cls ? Json(name(*cls)) : Json(nullptr);
  j["residual_risk_class"] = after ? Json(name(*after)) : Json(nullptr);
  return j;
}

std::string emit_json(const Worksheet& ws, const RiskMatrix& m, const ReportOptions& opt,
                      const std::vector<WorksheetRow>& rows) {
  Json j;
  j["schema"] = schema::kReport;
  j["model"] = model_ref(ws);
  j["matrix"] = m.name;
  j["include_waived"] = opt.include_waived;
  j["top_n"] = opt.top_n ? Json(*opt.top_n) : Json(nullptr);
  j["rows"] = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) j["rows"].push_back(ranked_row(rows[i], m, i + 1));
  return detail::dump(j);
}

}  // namespace

std::string emit_fmeca(const Worksheet& worksheet, const RiskMatrix& matrix,
                       const ReportOptions& options) {
  const auto rows = select_rows(worksheet, matrix, options.include_waived, options.top_n);
  switch (options.format) {
    case ReportFormat::kMarkdown: return emit_markdown(worksheet, matrix, rows);
    case ReportFormat::kCsv: return emit_csv(matrix, rows);
    case ReportFormat::kJson: return emit_json(worksheet, matrix, options, rows);
  }
  return {};
}

std::string emit_summary(const Worksheet& worksheet, const RiskMatrix& matrix,
                         const SummaryOptions& options) {
  if (options.top_n == 0) throw std::invalid_argument("top_n must be at least 1");
  if (options.format == ReportFormat::kCsv) {
    throw std::invalid_argument("summary supports markdown and json only");
  }
  std::map<RiskClass, std::size_t> counts;
  for (RiskClass c : kAllRiskClasses) counts[c] = 0;
  std::vector<WorksheetRow> top;
  for (auto& r : rank_rows(worksheet, matrix)) {
    if (!rated(r)) continue;
    ++counts[*risk_of(r, matrix)];
    if (top.size() < options.top_n) top.push_back(std::move(r));
  }
  std::vector<const WorksheetRow*> undisposed, waived;
  for (const auto& r : worksheet.rows) {
    if (r.waived) {
      waived.push_back(&r);
    } else if (!r.disposed()) {
      undisposed.push_back(&r);
    }
  }
  auto by_id = [](const WorksheetRow* a, const WorksheetRow* b) {
    return a->candidate_id < b->candidate_id;
  };
  std::sort(undisposed.begin(), undisposed.end(), by_id);
  std::sort(waived.begin(), waived.end(), by_id);

  if (options.format == ReportFormat::kJson) {
    Json j;
    j["schema"] = schema::kSummary;
    j["model"] = model_ref(worksheet);
    j["matrix"] = matrix.name;
    Json c;
    for (RiskClass cls : kAllRiskClasses) c[std::string(name(cls))] = counts[cls];
    j["counts"] = c;
    j["top"] = Json::array();
    for (std::size_t i = 0; i < top.size(); ++i) j["top"].push_back(ranked_row(top[i], matrix, i + 1));
    j["undisposed"] = Json::array();
    for (const auto* r : undisposed) j["undisposed"].push_back(r->candidate_id);
    j["waivers"] = Json::array();
    for (const auto* r : waived) {
      j["waivers"].push_back(
          Json{{"candidate_id", r->candidate_id}, {"justification", r->waiver_justification}});
    }
    return detail::dump(j);
  }

  std::string out = "# FMECA summary: " + md_escape(worksheet.model_name) + "\n\n";
  out += "Risk matrix: " + md_escape(matrix.name) + "\n\n";
  out += "| Risk class | Rows |\n|---|---|\n";
  for (RiskClass cls : kAllRiskClasses) {
    out += "| " + std::string(name(cls)) + " | " + std::to_string(counts[cls]) + " |\n";
  }
  out += "\n## Top " + std::to_string(options.top_n) + " ranked rows\n\n";
  if (top.empty()) {
    out += "No rated rows.\n";
  } else {
    out += "| Rank | Candidate | Interaction/Message | Failure mode (error) | Severity | "
           "Probability | Risk class |\n|---|---|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < top.size(); ++i) {
      const auto& r = top[i];
      out += "| " + std::to_string(i + 1) + " | `" + r.candidate_id + "` | " +
             md_escape(r.display_name) + " | " + md_escape(failure_mode_cell(r)) + " | " +
             display(*r.severity) + " | " + display(*r.probability) + " | " +
             risk_cell(r, matrix) + " |\n";
    }
  }
  out += "\n## Undisposed candidates (" + std::to_string(undisposed.size()) + ")\n\n";
  if (undisposed.empty()) out += "None.\n";
  for (const auto* r : undisposed) out += "- `" + r->candidate_id + "`\n";
  out += "\n## Waivers (" + std::to_string(waived.size()) + ")\n\n";
  if (waived.empty()) out += "None.\n";
  for (const auto* r : waived) {
    out += "- `" + r->candidate_id + "`: " + md_escape(r->waiver_justification) + "\n";
  }
  return out;
}

}  // namespace seqfmeca
