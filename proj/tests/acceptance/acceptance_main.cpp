// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "random_model.hpp"
#include "seqfmeca/cli.hpp"
#include "seqfmeca/documents.hpp"
#include "seqfmeca/dsl.hpp"
#include "seqfmeca/error_catalog.hpp"
#include "seqfmeca/fmeca.hpp"
#include "seqfmeca/trace.hpp"

namespace fs = std::filesystem;
using namespace seqfmeca;

namespace {

const std::string kFixtures = SEQFMECA_FIXTURES;
const std::string kTer = kFixtures + "/ter.rau";
const std::string kAnnotations = kFixtures + "/ter_annotations.json";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

struct CliResult {
  int status;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

// Collects the first failure reason of a criterion.
struct Check {
  std::string failure;

  bool operator()(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
    return ok;
  }
};

class Workdir {
 public:
  explicit Workdir(const std::string& name)
      : path_(fs::temp_directory_path() / ("seqfmeca_acceptance_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~Workdir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (std::size_t i = 1; i < line.size(); ++i) {
    if (line[i] == '\\' && i + 1 < line.size() && line[i + 1] == '|') {
      cell += '|';
      ++i;
    } else if (line[i] == '|') {
      const auto b = cell.find_first_not_of(' ');
      const auto e = cell.find_last_not_of(' ');
      cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
      cell.clear();
    } else {
      cell += line[i];
    }
  }
  return cells;
}

std::string criterion1(Check& check) {
  const auto start = std::chrono::steady_clock::now();
  Workdir dir("c1");
  const std::string ws = dir / "ws.json";
  check(cli({"worksheet", "init", kTer, "-o", ws}).status == 0, "worksheet init failed");
  check(cli({"worksheet", "merge", ws, kAnnotations}).status == 0, "merge failed");
  const auto report = cli({"report", ws});
  check(report.status == 0, "report exited " + std::to_string(report.status));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  struct Expected {
    std::string failure_mode;
    std::string severity;
    std::string probability;
  };
  const std::vector<Expected> expected = {
      {"Omission (E.3)", "minor (4)", "probable (P)"},
      {"Wrong order (E.2): before Set power supply", "severe (2)", "probable (P)"},
      {"Pressure too high (E.8)", "catastrophic (1)", "occasional (O)"},
  };
  std::istringstream lines(report.out);
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("| ", 0) == 0) rows.push_back(split_cells(line));
  }
  for (const auto& e : expected) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) {
      return r.size() >= 6 && r[1] == e.failure_mode;
    });
    if (!check(it != rows.end(), "row '" + e.failure_mode + "' not found")) continue;
    const auto& r = *it;
    check(r[0] == "Install/Init Control System:: Set air pressure in artificial muscles",
          "wrong message for '" + e.failure_mode + "': " + r[0]);
    check(r[4] == e.severity, "severity of '" + e.failure_mode + "' is " + r[4]);
    check(r[5] == e.probability, "probability of '" + e.failure_mode + "' is " + r[5]);
  }

  // The error ids behind those rows, from the worksheet itself.
  const auto loaded = read_worksheet(slurp(ws));
  if (check(loaded.value.has_value(), "worksheet unreadable")) {
    const Worksheet& w = *loaded.value;
    const auto* e3 = w.find("InstallInit/m2/E3/-/-");
    const auto* e2 = w.find("InstallInit/m2/E2/m1/-");
    const auto* e8 = w.find("InstallInit/m2/E8/pressure/above_max");
    check(e3 && e3->severity == HarmSeverity::kMinor && e3->probability == Probability::kProbable,
          "E3 row rating");
    check(e2 && e2->severity == HarmSeverity::kSevere && e2->probability == Probability::kProbable,
          "E2 row rating");
    check(e8 && e8->severity == HarmSeverity::kCatastrophic &&
              e8->probability == Probability::kOccasional,
          "E8 row rating");
  }
  check(seconds < 1.0, "runtime " + std::to_string(seconds) + " s");
  return "3 rows matched, pipeline " + std::to_string(static_cast<int>(seconds * 1000)) + " ms";
}

std::string criterion2(Check& check) {
  const ActorProfile profile = ActorProfile::default_profile();
  std::size_t mismatches = 0;
  std::size_t candidates = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const SystemModel m = testing::random_model(seed, {8, 3, 2});
    const auto set = enumerate_candidates(m, profile);
    std::map<ErrorModelId, std::size_t> counts;
    for (ErrorModelId e : kAllErrorModels) counts[e] = 0;
    for (const auto& c : set.candidates) ++counts[c.error];
    candidates += set.candidates.size();
    if (counts != testing::oracle_counts(m, profile)) {
      ++mismatches;
      check(false, "count mismatch at seed " + std::to_string(seed));
    }
  }
  return "200 models, " + std::to_string(candidates) + " candidates, " +
         std::to_string(mismatches) + " mismatches";
}

std::string criterion3(Check& check) {
  std::size_t round_trips = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const SystemModel m = testing::random_model(1000 + seed);
    const auto r = parse(serialize(m));
    if (check(r.model && *r.model == m, "round trip differs at seed " + std::to_string(seed))) {
      ++round_trips;
    }
  }
  const std::string ter_text = slurp(kTer);
  const auto ter = parse(ter_text, "ter.rau");
  if (check(ter.model.has_value(), "TER fixture does not parse")) {
    const auto again = parse(serialize(*ter.model));
    if (check(again.model && *again.model == *ter.model, "TER round trip differs")) ++round_trips;
  }

  std::mt19937_64 rng(2024);
  std::size_t rejected = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string input = i % 2 == 0 ? testing::corrupt(ter_text, rng) : testing::token_soup(rng);
    const auto r = parse(input);
    rejected += !r.model.has_value();
    check(r.model.has_value() == !has_errors(r.diagnostics),
          "fuzz input " + std::to_string(i) + ": model presence disagrees with diagnostics");
  }
  return std::to_string(round_trips) + " round trips, 10000 fuzz inputs (" +
         std::to_string(rejected) + " rejected with diagnostics)";
}

std::string criterion4(Check& check) {
  std::size_t mutants = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const SystemModel m = testing::random_model(seed);
    const auto set = enumerate_candidates(m, ActorProfile::default_profile());
    for (const auto& in : m.interactions) {
      const Trace nominal = nominal_trace(in);
      const std::size_t n = nominal.events.size();
      for (const auto& c : set.candidates) {
        if (c.interaction != in.name) continue;
        for (const auto& mt : mutate(in, c, seed)) {
          ++mutants;
          const auto cls = testing::classify_deviation(in, nominal, mt.trace);
          check(cls == c.error, "seed " + std::to_string(seed) + ": " + c.id() +
                                    " classified as " + (cls ? tag(*cls) : "nothing"));
          const std::size_t len = mt.trace.events.size();
          if (c.error == ErrorModelId::E3) check(len == n - 1, c.id() + " length");
          if (c.error == ErrorModelId::E1) check(len == n + 1, c.id() + " length");
          if (c.error == ErrorModelId::E2) {
            check(testing::breaks_precedence(in, mt.trace.message_ids()) &&
                      std::is_permutation(mt.trace.events.begin(), mt.trace.events.end(),
                                          nominal.events.begin(), nominal.events.end()),
                  c.id() + " is not a violating permutation");
          }
        }
      }
    }
  }
  return std::to_string(mutants) + " mutants classified";
}

std::string criterion5(Check& check) {
  const RiskMatrix m = RiskMatrix::default_matrix();
  check(validate_matrix(m).empty(), "default matrix fails validation");
  for (std::size_t s = 0; s < 5; ++s) {
    for (std::size_t p = 0; p < 5; ++p) {
      if (s > 0) check(m.cells[s - 1][p] <= m.cells[s][p], "not monotone in severity");
      if (p > 0) check(m.cells[s][p - 1] <= m.cells[s][p], "not monotone in probability");
    }
    check(m.cells[s][4] == RiskClass::kAcceptable, "impossible column not acceptable");
  }

  Workdir dir("c5");
  const std::string ws = dir / "ws.json";
  cli({"worksheet", "init", kTer, "-o", ws});
  cli({"worksheet", "merge", ws, kAnnotations});
  const auto loaded = read_worksheet(slurp(ws));
  if (check(loaded.value.has_value(), "worksheet unreadable")) {
    const auto ranked = rank_rows(*loaded.value, m);
    check(!ranked.empty() && ranked[0].candidate_id == "InstallInit/m2/E8/pressure/above_max",
          "first ranked row is " + (ranked.empty() ? std::string("none") : ranked[0].candidate_id));
  }
  const auto bad = cli({"report", ws, "--matrix", kFixtures + "/nonmonotone_matrix.json"});
  check(bad.status == 1, "non-monotone matrix exit " + std::to_string(bad.status));
  return "default matrix valid, E8 ranked first, non-monotone matrix exit " +
         std::to_string(bad.status);
}

std::string criterion6(Check& check) {
  Workdir dir("c6");
  const std::string ws = dir / "ws.json";
  check(cli({"worksheet", "init", kTer, "-o", ws}).status == 0, "init failed");
  check(cli({"worksheet", "merge", ws, kAnnotations}).status == 0, "merge failed");
  const auto ok = cli({"worksheet", "check", kTer, ws});
  check(ok.status == 0, "check exited " + std::to_string(ok.status));

  const std::string once = slurp(ws);
  check(cli({"worksheet", "merge", ws, kAnnotations}).status == 0, "second merge failed");
  check(slurp(ws) == once, "merge is not idempotent");

  // One more message in the interaction.
  std::string text = slurp(kTer);
  const std::string added =
      "  msg m5: Operator -> ControlSystem : \"Check manometer\"(reading: number in 0..6 bar) "
      "after m2;\n";
  text.insert(text.rfind('}'), added);
  const std::string edited = dir / "ter_edited.rau";
  spit(edited, text);

  const auto before = enumerate_candidates(*parse(slurp(kTer)).model, ActorProfile::default_profile());
  const auto after = enumerate_candidates(*parse(text).model, ActorProfile::default_profile());
  std::set<std::string> expected;
  for (const auto& c : after.candidates) {
    if (!before.find(c.id())) expected.insert(c.id());
  }

  const auto drift = cli({"worksheet", "check", edited, ws, "--json"});
  std::set<std::string> missing;
  const auto diags = nlohmann::json::parse(drift.out, nullptr, false);
  if (check(!diags.is_discarded(), "check --json output is not JSON")) {
    for (const auto& d : diags["diagnostics"]) {
      if (d["code"] == "F001") missing.insert(d["path"].get<std::string>().substr(4));
    }
  }
  check(!expected.empty() && missing == expected,
        "missing rows (" + std::to_string(missing.size()) + ") differ from new candidates (" +
            std::to_string(expected.size()) + ")");
  check(drift.status == 1, "check after edit exited " + std::to_string(drift.status));
  return "check exit 0, " + std::to_string(missing.size()) + " new candidates reported missing, "
         "merge idempotent";
}

std::string criterion7(Check& check) {
  std::vector<std::vector<std::string>> outputs;
  for (int run_no = 0; run_no < 2; ++run_no) {
    Workdir dir("c7_" + std::to_string(run_no));
    const std::string ws = dir / "ws.json";
    std::vector<std::string> out;
    out.push_back(cli({"enumerate", kTer, "--json"}).out);
    cli({"worksheet", "init", kTer, "-o", ws});
    cli({"worksheet", "merge", ws, kAnnotations});
    out.push_back(slurp(ws));
    for (const char* f : {"markdown", "csv", "json"}) {
      out.push_back(cli({"report", ws, "--format", f, "--include-waived"}).out);
    }
    out.push_back(cli({"report", ws, "--summary"}).out);
    cli({"mutate", kTer, "--error", "E9", "--seed", "17", "--out-dir", dir / "mutants"});
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir / "mutants")) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back(f.filename().string() + "\n" + slurp(f));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      out.push_back(write_candidates(
          enumerate_candidates(testing::random_model(seed), ActorProfile::default_profile())));
    }
    outputs.push_back(std::move(out));
  }
  check(outputs[0].size() == outputs[1].size(), "different number of artifacts");
  for (std::size_t i = 0; i < std::min(outputs[0].size(), outputs[1].size()); ++i) {
    check(outputs[0][i] == outputs[1][i], "artifact " + std::to_string(i) + " differs");
    check(!outputs[0][i].empty(), "artifact " + std::to_string(i) + " is empty");
  }
  return std::to_string(outputs[0].size()) + " artifacts byte-identical";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string(Check&)>>> criteria = {
      {"TER fixture reproduction", criterion1},
      {"enumeration oracle equivalence", criterion2},
      {"parser round-trip and fuzzing", criterion3},
      {"mutation single-fault property", criterion4},
      {"risk-matrix properties", criterion5},
      {"worksheet lifecycle", criterion6},
      {"determinism", criterion7},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    std::string detail;
    try {
      detail = criteria[i].second(check);
    } catch (const std::exception& e) {
      check(false, std::string("exception: ") + e.what());
    }
    const bool ok = check.failure.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first
              << " (" << (ok ? detail : check.failure) << ")\n";
  }
  return failed == 0 ? 0 : 1;
}
