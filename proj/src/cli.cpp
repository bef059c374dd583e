#include "seqfmeca/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "seqfmeca/documents.hpp"
#include "seqfmeca/dsl.hpp"
#include "seqfmeca/error_catalog.hpp"
#include "seqfmeca/fmeca.hpp"
#include "seqfmeca/model.hpp"
#include "seqfmeca/report.hpp"
#include "seqfmeca/trace.hpp"

namespace seqfmeca {
namespace {

namespace fs = std::filesystem;

// Ends a command early with an exit status; the message is already printed.
struct Exit {
  int status;
};

class Context {
 public:
  Context(std::ostream& out, std::ostream& err) : out(out), err(err) {}

  std::ostream& out;
  std::ostream& err;

  [[noreturn]] void fail(int status, const std::string& message) {
    err << "error: " << message << "\n";
    throw Exit{status};
  }

  std::string read(const std::string& path) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) fail(exit_status::kIo, "cannot read '" + path + "'");
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in && !in.eof()) fail(exit_status::kIo, "cannot read '" + path + "'");
    return buf.str();
  }

  // Writes through a temporary sibling so a failed write never truncates
  // the target.
  void write(const std::string& path, const std::string& content) {
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      f << content;
      f.flush();
      if (!f) fail(exit_status::kIo, "cannot write '" + path + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
      fs::remove(tmp, ec);
      fail(exit_status::kIo, "cannot write '" + path + "'");
    }
  }

  void emit(const std::optional<std::string>& path, const std::string& content) {
    if (path) {
      write(*path, content);
    } else {
      out << content;
    }
  }

  void print(std::vector<Diagnostic> diagnostics) {
    for (const auto& d : diagnostics) err << format_human(d) << "\n";
  }

  // Prints diagnostics and stops with status 1 when any is an error.
  void check(const std::vector<Diagnostic>& diagnostics) {
    print(diagnostics);
    if (has_errors(diagnostics)) throw Exit{exit_status::kDiagnostics};
  }

  SystemModel load_model(const std::string& path) {
    auto parsed = parse(read(path), path);
    if (!parsed.model) check(parsed.diagnostics);
    auto diags = parsed.diagnostics;
    auto more = validate_model(*parsed.model);
    diags.insert(diags.end(), more.begin(), more.end());
    check(diags);
    return std::move(*parsed.model);
  }

  ActorProfile load_profile(const std::optional<std::string>& path) {
    if (!path) return ActorProfile::default_profile();
    auto parsed = parse_profile(read(*path), *path);
    check(parsed.diagnostics);
    return *parsed.profile;
  }

  Worksheet load_worksheet(const std::string& path) {
    auto loaded = read_worksheet(read(path), path);
    check(loaded.diagnostics);
    return std::move(*loaded.value);
  }

  RiskMatrix load_matrix(const std::optional<std::string>& path) {
    if (!path || path->empty()) return RiskMatrix::default_matrix();
    auto loaded = read_matrix(read(*path), *path);
    check(loaded.diagnostics);
    return std::move(*loaded.value);
  }
};

std::string file_stem(std::string_view candidate_id) {
  std::string out;
  for (char c : candidate_id) {
    const bool safe = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    out += c == '/' ? '.' : (safe ? c : '_');
  }
  return out;
}

struct Options {
  std::string model;
  std::string worksheet;
  std::string annotations;
  std::optional<std::string> profile;
  std::optional<std::string> output;
  std::optional<std::string> matrix;
  std::string format = "markdown";
  std::string candidate;
  std::string error;
  std::string out_dir;
  std::string interaction;
  std::size_t load_threshold = LintOptions{}.concurrent_load_threshold;
  std::size_t top = 0;
  std::uint64_t seed = 0;
  bool json = false;
  bool strict = false;
  bool include_waived = false;
  bool summary = false;
};

int cmd_check(Context& ctx, const Options& o) {
  auto parsed = parse(ctx.read(o.model), o.model);
  auto diags = parsed.diagnostics;
  if (parsed.model) {
    auto v = validate_model(*parsed.model);
    diags.insert(diags.end(), v.begin(), v.end());
    if (!has_errors(v)) {
      auto lints = allocation_lints(*parsed.model, {o.load_threshold});
      diags.insert(diags.end(), lints.begin(), lints.end());
    }
  }
  if (o.json) {
    ctx.out << write_diagnostics(diags);
  } else {
    ctx.print(diags);
  }
  return has_errors(diags) ? exit_status::kDiagnostics : exit_status::kOk;
}

int cmd_enumerate(Context& ctx, const Options& o) {
  const SystemModel model = ctx.load_model(o.model);
  const auto set = enumerate_candidates(model, ctx.load_profile(o.profile));
  if (o.json) {
    ctx.out << write_candidates(set);
  } else {
    for (const auto& c : set.candidates) ctx.out << c.id() << "\n";
  }
  return exit_status::kOk;
}

int cmd_worksheet_init(Context& ctx, const Options& o) {
  const SystemModel model = ctx.load_model(o.model);
  const auto set = enumerate_candidates(model, ctx.load_profile(o.profile));
  ctx.emit(o.output, write_worksheet(init_worksheet(model, set)));
  return exit_status::kOk;
}

int cmd_worksheet_merge(Context& ctx, const Options& o) {
  const Worksheet ws = ctx.load_worksheet(o.worksheet);
  auto doc = read_annotations(ctx.read(o.annotations), o.annotations);
  ctx.check(doc.diagnostics);
  auto merged = merge_annotations(ws, *doc.value);
  ctx.check(merged.diagnostics);
  ctx.write(o.output.value_or(o.worksheet), write_worksheet(merged.worksheet));
  return exit_status::kOk;
}

int cmd_worksheet_check(Context& ctx, const Options& o) {
  const SystemModel model = ctx.load_model(o.model);
  const auto set = enumerate_candidates(model, ctx.load_profile(o.profile));
  const Worksheet ws = ctx.load_worksheet(o.worksheet);
  const auto diags = completeness_check(ws, set);
  if (o.json) {
    ctx.out << write_diagnostics(diags);
  } else {
    ctx.print(diags);
  }
  const bool warned = std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::kWarning;
  });
  if (has_errors(diags) || (o.strict && warned)) return exit_status::kDiagnostics;
  return exit_status::kOk;
}

int cmd_report(Context& ctx, const Options& o) {
  const RiskMatrix matrix = ctx.load_matrix(o.matrix);
  const Worksheet ws = ctx.load_worksheet(o.worksheet);
  const auto format = parse_report_format(o.format);
  if (!format) ctx.fail(exit_status::kUsage, "unknown report format '" + o.format + "'");
  std::string doc;
  if (o.summary) {
    if (*format == ReportFormat::kCsv) {
      ctx.fail(exit_status::kUsage, "summary supports markdown and json only");
    }
    SummaryOptions so;
    so.format = *format;
    if (o.top) so.top_n = o.top;
    doc = emit_summary(ws, matrix, so);
  } else {
    ReportOptions ro;
    ro.format = *format;
    ro.include_waived = o.include_waived;
    if (o.top) ro.top_n = o.top;
    doc = emit_fmeca(ws, matrix, ro);
  }
  ctx.emit(o.output, doc);
  return exit_status::kOk;
}

int cmd_mutate(Context& ctx, const Options& o) {
  if (o.candidate.empty() == o.error.empty()) {
    ctx.fail(exit_status::kUsage, "give exactly one of --candidate or --error");
  }
  std::optional<ErrorModelId> error;
  if (!o.error.empty()) {
    error = parse_error_model(o.error);
    if (!error) ctx.fail(exit_status::kUsage, "unknown error model '" + o.error + "'");
  }
  const SystemModel model = ctx.load_model(o.model);
  const auto set = enumerate_candidates(model, ctx.load_profile(o.profile));

  std::vector<const FailureModeCandidate*> selected;
  if (error) {
    for (const auto& c : set.candidates) {
      if (c.error == *error) selected.push_back(&c);
    }
  } else {
    const auto* c = set.find(o.candidate);
    if (!c) ctx.fail(exit_status::kUsage, "unknown candidate '" + o.candidate + "'");
    selected.push_back(c);
  }

  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec || !fs::is_directory(o.out_dir)) {
    ctx.fail(exit_status::kIo, "cannot create directory '" + o.out_dir + "'");
  }
  for (const auto* c : selected) {
    const Interaction& in = *model.find_interaction(c->interaction);
    const auto mutants = mutate(in, *c, o.seed);
    for (std::size_t k = 0; k < mutants.size(); ++k) {
      const fs::path file =
          fs::path(o.out_dir) / (file_stem(c->id()) + "." + std::to_string(k + 1) + ".puml");
      ctx.write(file.string(), emit_sequence_text(in, mutants[k]));
      ctx.out << file.string() << "\n";
    }
  }
  return exit_status::kOk;
}

int cmd_sequence(Context& ctx, const Options& o) {
  const SystemModel model = ctx.load_model(o.model);
  const Interaction* in = model.find_interaction(o.interaction);
  if (!in) ctx.fail(exit_status::kUsage, "unknown interaction '" + o.interaction + "'");
  ctx.emit(o.output, emit_sequence_text(*in, nominal_trace(*in)));
  return exit_status::kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Failure-mode enumeration and FMECA worksheets for interaction models",
               "seqfmeca"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Parse, validate and lint a model");
  check->add_option("model", o.model, "Model source (.rau)")->required();
  check->add_flag("--json", o.json, "Print diagnostics as JSON on standard output");
  check->add_option("--load-threshold", o.load_threshold,
                    "Use cases per human actor from which W003 is reported")
      ->check(CLI::PositiveNumber);

  auto* enumerate = app.add_subcommand("enumerate", "List failure-mode candidates");
  enumerate->add_option("model", o.model, "Model source (.rau)")->required();
  enumerate->add_option("--profile", o.profile, "Actor profile override file");
  enumerate->add_flag("--json", o.json, "Print full candidate records as JSON");

  auto* worksheet = app.add_subcommand("worksheet", "Create, merge and check worksheets");
  worksheet->require_subcommand(1);
  auto* ws_init = worksheet->add_subcommand("init", "Write a blank worksheet");
  ws_init->add_option("model", o.model, "Model source (.rau)")->required();
  ws_init->add_option("--profile", o.profile, "Actor profile override file");
  ws_init->add_option("-o,--out", o.output, "Output path (default: standard output)");
  auto* ws_merge = worksheet->add_subcommand("merge", "Apply an annotation document");
  ws_merge->add_option("worksheet", o.worksheet, "Worksheet document")->required();
  ws_merge->add_option("annotations", o.annotations, "Annotation document")->required();
  ws_merge->add_option("-o,--out", o.output, "Output path (default: rewrite the worksheet)");
  auto* ws_check = worksheet->add_subcommand("check", "Check a worksheet against its model");
  ws_check->add_option("model", o.model, "Model source (.rau)")->required();
  ws_check->add_option("worksheet", o.worksheet, "Worksheet document")->required();
  ws_check->add_option("--profile", o.profile, "Actor profile override file");
  ws_check->add_flag("--strict", o.strict, "Treat undisposed rows as failures");
  ws_check->add_flag("--json", o.json, "Print diagnostics as JSON on standard output");

  auto* report = app.add_subcommand("report", "Emit an FMECA table or summary");
  report->add_option("worksheet", o.worksheet, "Worksheet document")->required();
  report->add_option("--format", o.format, "markdown, csv or json")
      ->check(CLI::IsMember({"markdown", "md", "csv", "json"}));
  report->add_option("--matrix", o.matrix, "Risk matrix document")->envname("SEQFMECA_MATRIX");
  report->add_flag("--include-waived", o.include_waived, "Include waived rows");
  report->add_option("--top", o.top, "Only the N highest ranked rows")
      ->check(CLI::PositiveNumber);
  report->add_flag("--summary", o.summary, "Emit the ranked summary instead of the table");
  report->add_option("-o,--out", o.output, "Output path (default: standard output)");

  auto* mutate_cmd = app.add_subcommand("mutate", "Write mutant sequence diagrams");
  mutate_cmd->add_option("model", o.model, "Model source (.rau)")->required();
  auto* cand = mutate_cmd->add_option("--candidate", o.candidate, "Candidate id");
  auto* err_opt = mutate_cmd->add_option("--error", o.error, "Error model, e.g. E.3");
  cand->excludes(err_opt);
  mutate_cmd->add_option("--out-dir", o.out_dir, "Output directory")->required();
  mutate_cmd->add_option("--seed", o.seed, "Seed for the random-response variant");
  mutate_cmd->add_option("--profile", o.profile, "Actor profile override file");

  auto* sequence = app.add_subcommand("sequence", "Write the nominal sequence diagram");
  sequence->add_option("model", o.model, "Model source (.rau)")->required();
  sequence->add_option("interaction", o.interaction, "Interaction name")->required();
  sequence->add_option("-o,--out", o.output, "Output path (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_status::kOk : exit_status::kUsage;
  }

  Context ctx(out, err);
  try {
    if (*check) return cmd_check(ctx, o);
    if (*enumerate) return cmd_enumerate(ctx, o);
    if (*ws_init) return cmd_worksheet_init(ctx, o);
    if (*ws_merge) return cmd_worksheet_merge(ctx, o);
    if (*ws_check) return cmd_worksheet_check(ctx, o);
    if (*report) return cmd_report(ctx, o);
    if (*mutate_cmd) return cmd_mutate(ctx, o);
    if (*sequence) return cmd_sequence(ctx, o);
  } catch (const Exit& e) {
    return e.status;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return exit_status::kDiagnostics;
  }
  return exit_status::kUsage;
}

}  // namespace seqfmeca
