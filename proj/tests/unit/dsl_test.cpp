#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "random_model.hpp"
#include "seqfmeca/dsl.hpp"

namespace seqfmeca {
namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(SEQFMECA_FIXTURES) + "/" + name, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const Diagnostic* find_code(const ParseResult& r, std::string_view code) {
  for (const auto& d : r.diagnostics) {
    if (d.code == code) return &d;
  }
  return nullptr;
}

TEST(Parse, TerFixture) {
  const auto r = parse(read_fixture("ter.rau"), "ter.rau");
  ASSERT_TRUE(r.model) << (r.diagnostics.empty() ? "" : format_human(r.diagnostics[0]));
  EXPECT_TRUE(r.diagnostics.empty());
  const SystemModel& m = *r.model;
  EXPECT_EQ(m.name, "TER");
  ASSERT_NE(m.find_actor("Operator"), nullptr);
  EXPECT_EQ(m.find_actor("Operator")->kind, ActorKind::kHuman);
  EXPECT_EQ(m.find_actor("MasterSite")->kind, ActorKind::kExternalSystem);
  EXPECT_EQ(m.objects, std::vector<std::string>{"ControlSystem"});
  EXPECT_EQ(m.allocation_of("Probe Management"), Allocation::kExcluded);
  EXPECT_EQ(m.allocation_of("Prepare Patient"), Allocation::kOperationalProcess);

  const Interaction* in = m.find_interaction("InstallInit");
  ASSERT_NE(in, nullptr);
  EXPECT_EQ(in->realizes, "Install/Init Control System");
  EXPECT_EQ(in->at("m1").operation, "Set power supply");
  const Message& m2 = in->at("m2");
  EXPECT_EQ(m2.operation, "Set air pressure in artificial muscles");
  EXPECT_EQ(m2.predecessors, std::vector<std::string>{"m1"});
  ASSERT_EQ(m2.parameters.size(), 1u);
  const auto& iv = std::get<NumericInterval>(m2.parameters[0].domain);
  EXPECT_EQ(iv.lower, 0);
  EXPECT_EQ(iv.upper, 6);
  EXPECT_EQ(iv.unit, "bar");
}

TEST(Parse, AllMessageClauses) {
  const auto r = parse(R"(
system S { actor U kind human; object C; }
interaction I {
  msg m1: U -> C : go();
  msg m2: U -> C : "Set mode"(mode: enum in {fast, slow}, n: number, t: text, b: boolean)
    response (ok: boolean) deadline 1s..2s treat 0ms..500ms deadline send 0s..5min after m1;
})");
  ASSERT_TRUE(r.model);
  const Message& m = r.model->interactions[0].messages[1];
  EXPECT_EQ(m.operation, "Set mode");
  ASSERT_EQ(m.parameters.size(), 4u);
  EXPECT_EQ(std::get<EnumSet>(m.parameters[0].domain).values,
            (std::vector<std::string>{"fast", "slow"}));
  EXPECT_TRUE(std::holds_alternative<std::monostate>(m.parameters[1].domain));
  EXPECT_EQ(m.parameters[2].type, TypeTag::kText);
  EXPECT_EQ(m.parameters[3].type, TypeTag::kBoolean);
  ASSERT_TRUE(m.send_deadline);
  EXPECT_EQ(m.send_deadline->max, (Duration{5, TimeUnit::kMinutes}));
  ASSERT_TRUE(m.treatment_deadline);
  EXPECT_EQ(m.treatment_deadline->max.milliseconds(), 500);
  ASSERT_TRUE(m.response);
  ASSERT_TRUE(m.response->receive_deadline);
  EXPECT_EQ(m.response->receive_deadline->min, (Duration{1, TimeUnit::kSeconds}));
}

TEST(Parse, ParticipantsDerivedInOrderOfAppearance) {
  const auto r = parse(R"(
system S { actor A kind human; object B; object C; }
interaction I { msg m1: B -> C : x(); msg m2: A -> B : y(); })");
  ASSERT_TRUE(r.model);
  EXPECT_EQ(r.model->interactions[0].participants,
            (std::vector<std::string>{"B", "C", "A"}));
}

TEST(Parse, CommentsAndCrlf) {
  const auto r = parse("# head\r\nsystem S { # inline\r\n  object C; # tail\r\n}\r\n");
  ASSERT_TRUE(r.model);
  EXPECT_EQ(r.model->objects, std::vector<std::string>{"C"});
}

TEST(Parse, IllegalCharacterHasExactSpan) {
  const auto r = parse("system S {\n  object C;\n  @ object D;\n}\n", "x.rau");
  EXPECT_FALSE(r.model);
  const Diagnostic* d = find_code(r, code::kIllegalCharacter);
  ASSERT_NE(d, nullptr);
  ASSERT_TRUE(d->span);
  EXPECT_EQ(d->span->file, "x.rau");
  EXPECT_EQ(d->span->start.line, 3u);
  EXPECT_EQ(d->span->start.column, 3u);
  EXPECT_EQ(d->span->start.offset, 25u);
  EXPECT_EQ(d->span->end.offset, 26u);
  EXPECT_EQ(format_human(*d).rfind("x.rau:3:3: error[L001]", 0), 0u);
}

TEST(Parse, UnexpectedTokenSpan) {
  const auto r = parse("system S {\n  actor A kind robot;\n}\n");
  EXPECT_FALSE(r.model);
  const Diagnostic* d = find_code(r, code::kUnexpectedToken);
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->span->start.line, 2u);
  EXPECT_EQ(d->span->start.column, 16u);
  EXPECT_EQ(d->span->end.column, 21u);
}

TEST(Parse, UnterminatedString) {
  const auto r = parse("system S { usecase \"open\n; }");
  EXPECT_NE(find_code(r, code::kUnterminatedString), nullptr);
}

TEST(Parse, InvalidUtf8InString) {
  const auto r = parse("system S { usecase \"bad \xff byte\"; }");
  EXPECT_NE(find_code(r, code::kInvalidUtf8), nullptr);
}

TEST(Parse, Utf8InStringsAndComments) {
  const auto r = parse("# régler la pression\nsystem S { usecase \"Überdruck prüfen\"; }");
  ASSERT_TRUE(r.model);
  EXPECT_EQ(r.model->use_cases[0].name, "Überdruck prüfen");
}

TEST(Parse, BadNumber) {
  const auto r = parse(std::string(R"(
system S { actor U kind human; object C; }
interaction I { msg m1: U -> C : x(p: number in 0..1)") + "1" + std::string(400, '0') + "); })");
  EXPECT_FALSE(r.model);
  EXPECT_NE(find_code(r, code::kBadNumber), nullptr);
}

TEST(Parse, UnexpectedEof) {
  const auto r = parse("system S { actor A kind");
  EXPECT_FALSE(r.model);
  EXPECT_NE(find_code(r, code::kUnexpectedEof), nullptr);
}

TEST(Parse, DuplicateClause) {
  const auto r = parse(R"(
system S { actor U kind human; object C; }
interaction I { msg m1: U -> C : x() treat 1s..2s treat 1s..3s; })");
  EXPECT_FALSE(r.model);
  EXPECT_NE(find_code(r, code::kDuplicateClause), nullptr);
}

TEST(Parse, BadDurationUnit) {
  const auto r = parse(R"(
system S { actor U kind human; object C; }
interaction I { msg m1: U -> C : x() treat 1s..2h; })");
  EXPECT_FALSE(r.model);
  EXPECT_NE(find_code(r, code::kBadDuration), nullptr);
}

TEST(Parse, MissingSystem) {
  const auto r = parse("interaction I { }");
  EXPECT_FALSE(r.model);
  EXPECT_NE(find_code(r, code::kMissingSystem), nullptr);
}

TEST(Parse, DuplicateNameIsSemanticError) {
  const auto r = parse(R"(
system S { actor U kind human; object U; }
)");
  EXPECT_FALSE(r.model);
  const Diagnostic* d = find_code(r, code::kDuplicateName);
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->span->start.line, 2u);
}

TEST(Parse, RecoversToReportSeveralErrors) {
  const auto r = parse(R"(
system S {
  actor A kind robot;
  object ;
  actor B kind human;
}
interaction I { msg m1 A -> B : x(); msg m2: A -> B : y(); }
)");
  EXPECT_FALSE(r.model);
  EXPECT_GE(r.diagnostics.size(), 3u);
  std::set<std::uint32_t> lines;
  for (const auto& d : r.diagnostics) lines.insert(d.span->start.line);
  EXPECT_TRUE(lines.contains(3));
  EXPECT_TRUE(lines.contains(4));
  EXPECT_TRUE(lines.contains(7));
}

TEST(Serialize, EmptyModel) {
  SystemModel m;
  m.name = "Foo";
  EXPECT_EQ(serialize(m), "system Foo {}\n");
  const auto r = parse(serialize(m));
  ASSERT_TRUE(r.model);
  EXPECT_EQ(*r.model, m);
}

TEST(Serialize, TerRoundTrip) {
  const auto r = parse(read_fixture("ter.rau"));
  ASSERT_TRUE(r.model);
  const std::string text = serialize(*r.model);
  const auto again = parse(text);
  ASSERT_TRUE(again.model);
  EXPECT_EQ(*again.model, *r.model);
  EXPECT_EQ(serialize(*again.model), text);
}

TEST(Serialize, QuotesOperationsAndEscapes) {
  SystemModel m;
  m.name = "Q";
  m.objects = {"A", "B"};
  m.use_cases.push_back({"say \"hi\"\\\n\tthere", {}, "line\r\nbreak"});
  Interaction in;
  in.name = "I";
  in.participants = {"A", "B"};
  in.messages.push_back({"m1", "A", "B", "two words", {}, {}, {}, {}, {}});
  m.interactions.push_back(in);
  const std::string text = serialize(m);
  EXPECT_NE(text.find("\"two words\"()"), std::string::npos);
  const auto r = parse(text);
  ASSERT_TRUE(r.model) << text;
  EXPECT_EQ(*r.model, m);
}

TEST(Serialize, RandomModelsRoundTrip) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const SystemModel m = testing::random_model(seed);
    const std::string text = serialize(m);
    const auto r = parse(text);
    ASSERT_TRUE(r.model) << "seed " << seed << "\n" << text;
    EXPECT_EQ(*r.model, m) << "seed " << seed << "\n" << text;
  }
}

TEST(Parse, SurvivesCorruptedInput) {
  const std::string base = read_fixture("ter.rau");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1500; ++i) {
    const std::string text = i % 3 == 0 ? testing::token_soup(rng) : testing::corrupt(base, rng);
    const auto r = parse(text);
    EXPECT_EQ(r.model.has_value(), !has_errors(r.diagnostics));
    for (const auto& d : r.diagnostics) {
      if (!d.span) continue;
      EXPECT_LE(d.span->start.offset, text.size());
      EXPECT_LE(d.span->end.offset, text.size());
      EXPECT_LE(d.span->start.offset, d.span->end.offset);
    }
    if (r.model) {
      const auto again = parse(serialize(*r.model));
      ASSERT_TRUE(again.model);
      EXPECT_EQ(*again.model, *r.model);
    }
  }
}

}  // namespace
}  // namespace seqfmeca
