#include <charconv>
#include <set>
#include <unordered_set>

#include "lexer.hpp"
#include "seqfmeca/dsl.hpp"

namespace seqfmeca {
namespace {

using detail::Token;
using detail::TokenKind;

constexpr std::size_t kMaxDiagnostics = 200;

// Unwinds to the innermost declaration boundary after a syntax error has
// been reported.
struct Recover {};

class Parser {
 public:
  Parser(std::string_view text, std::string file)
      : file_(std::move(file)) {
    tokens_ = detail::tokenize(text, file_, diagnostics_);
  }

  ParseResult run() {
    std::optional<SystemModel> system;
    std::vector<Interaction> interactions;
    while (!peek().is(TokenKind::kEnd) && !saturated()) {
      try {
        if (peek().is_word("system")) {
          const Token& kw = peek();
          SystemModel m = parse_system();
          if (system) {
            error(code::kDuplicateClause, kw, "only one system block is allowed per file");
          } else {
            system = std::move(m);
          }
        } else if (peek().is_word("interaction")) {
          interactions.push_back(parse_interaction());
        } else {
          unexpected("'system' or 'interaction'");
        }
      } catch (const Recover&) {
        sync_top_level();
      }
    }

    if (!system) {
      Diagnostic d;
      d.code = std::string(code::kMissingSystem);
      d.span = detail::make_span(file_, peek().start, peek().end);
      d.text = "source declares no system block";
      diagnostics_.push_back(std::move(d));
    } else {
      std::set<std::string_view> names;
      for (std::size_t i = 0; i < interactions.size(); ++i) {
        if (!names.insert(interactions[i].name).second) {
          error_at(code::kDuplicateName, interaction_spans_[i],
                   "duplicate interaction name '" + interactions[i].name + "'");
        }
      }
      system->interactions = std::move(interactions);
    }

    ParseResult result;
    if (!has_errors(diagnostics_)) result.model = std::move(system);
    result.diagnostics = std::move(diagnostics_);
    return result;
  }

 private:
  // -- token helpers -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& take() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool saturated() const { return diagnostics_.size() >= kMaxDiagnostics; }

  void error_at(std::string_view code, const SourceSpan& span, std::string text) {
    if (saturated()) return;
    Diagnostic d;
    d.code = std::string(code);
    d.span = span;
    d.text = std::move(text);
    diagnostics_.push_back(std::move(d));
  }
  void error(std::string_view code, const Token& at, std::string text) {
    error_at(code, detail::make_span(file_, at.start, at.end), std::move(text));
  }

  [[noreturn]] void unexpected(std::string_view expected) {
    const Token& t = peek();
    if (t.is(TokenKind::kEnd)) {
      error(code::kUnexpectedEof, t,
            "unexpected end of input, expected " + std::string(expected));
    } else {
      std::string shown = t.is(TokenKind::kString) ? "string" : "'" + t.text + "'";
      error(code::kUnexpectedToken, t,
            "unexpected " + shown + ", expected " + std::string(expected));
    }
    throw Recover{};
  }

  const Token& expect(TokenKind kind) {
    if (!peek().is(kind)) unexpected(detail::describe(kind));
    return take();
  }
  const Token& expect_word(std::string_view word) {
    if (!peek().is_word(word)) unexpected("'" + std::string(word) + "'");
    return take();
  }
  bool accept(TokenKind kind) {
    if (!peek().is(kind)) return false;
    take();
    return true;
  }

  // Skip to the end of the current statement: past the next ';' at depth 0,
  // or up to (not past) a '}' closing the enclosing block.
  void sync_statement() {
    int depth = 0;
    while (!peek().is(TokenKind::kEnd)) {
      const TokenKind k = peek().kind;
      if (k == TokenKind::kLBrace || k == TokenKind::kLParen) {
        ++depth;
      } else if (k == TokenKind::kRParen) {
        if (depth > 0) --depth;
      } else if (k == TokenKind::kRBrace) {
        if (depth == 0) return;
        --depth;
      } else if (k == TokenKind::kSemicolon && depth == 0) {
        take();
        return;
      }
      take();
    }
  }

  void sync_top_level() {
    int depth = 0;
    bool first = true;
    while (!peek().is(TokenKind::kEnd)) {
      const Token& t = peek();
      if (depth == 0 && !first &&
          (t.is_word("system") || t.is_word("interaction"))) {
        return;
      }
      first = false;
      if (t.is(TokenKind::kLBrace)) ++depth;
      if (t.is(TokenKind::kRBrace) && depth > 0) {
        --depth;
        take();
        if (depth == 0) return;
        continue;
      }
      take();
    }
  }

  // -- grammar -------------------------------------------------------------

  SystemModel parse_system() {
    expect_word("system");
    SystemModel model;
    model.name = expect(TokenKind::kIdent).text;
    expect(TokenKind::kLBrace);
    std::set<std::string> participants;
    std::set<std::string> use_cases;
    while (!peek().is(TokenKind::kRBrace)) {
      if (peek().is(TokenKind::kEnd)) unexpected("'}'");
      if (saturated()) throw Recover{};
      try {
        const Token& kw = peek();
        if (kw.is_word("actor")) {
          take();
          const Token& name = expect(TokenKind::kIdent);
          expect_word("kind");
          Actor a;
          a.name = name.text;
          if (peek().is_word("human")) {
            a.kind = ActorKind::kHuman;
          } else if (peek().is_word("external")) {
            a.kind = ActorKind::kExternalSystem;
          } else {
            unexpected("'human' or 'external'");
          }
          take();
          expect(TokenKind::kSemicolon);
          if (!participants.insert(a.name).second) {
            error(code::kDuplicateName, name, "duplicate participant name '" + a.name + "'");
          }
          model.actors.push_back(std::move(a));
        } else if (kw.is_word("object")) {
          take();
          const Token& name = expect(TokenKind::kIdent);
          expect(TokenKind::kSemicolon);
          if (!participants.insert(name.text).second) {
            error(code::kDuplicateName, name,
                  "duplicate participant name '" + name.text + "'");
          }
          model.objects.push_back(name.text);
        } else if (kw.is_word("usecase")) {
          take();
          const Token& title = expect(TokenKind::kString);
          UseCase u;
          u.name = title.text;
          std::optional<Allocation> allocation;
          bool seen_actors = false;
          bool seen_description = false;
          while (!peek().is(TokenKind::kSemicolon)) {
            const Token& clause = peek();
            if (clause.is_word("actors")) {
              take();
              if (seen_actors) error(code::kDuplicateClause, clause, "duplicate 'actors' clause");
              seen_actors = true;
              u.linked_actors = ident_list();
            } else if (clause.is_word("allocation")) {
              take();
              if (allocation) error(code::kDuplicateClause, clause, "duplicate 'allocation' clause");
              if (peek().is_word("inside")) {
                allocation = Allocation::kInsideSystem;
              } else if (peek().is_word("process")) {
                allocation = Allocation::kOperationalProcess;
              } else if (peek().is_word("excluded")) {
                allocation = Allocation::kExcluded;
              } else {
                unexpected("'inside', 'process' or 'excluded'");
              }
              take();
            } else if (clause.is_word("description")) {
              take();
              if (seen_description) {
                error(code::kDuplicateClause, clause, "duplicate 'description' clause");
              }
              seen_description = true;
              u.description = expect(TokenKind::kString).text;
            } else {
              unexpected("'actors', 'allocation', 'description' or ';'");
            }
          }
          take();  // ';'
          if (!use_cases.insert(u.name).second) {
            error(code::kDuplicateName, title, "duplicate use case '" + u.name + "'");
          }
          if (allocation) model.boundary.push_back({u.name, *allocation});
          model.use_cases.push_back(std::move(u));
        } else {
          unexpected("'actor', 'object', 'usecase' or '}'");
        }
      } catch (const Recover&) {
        sync_statement();
      }
    }
    expect(TokenKind::kRBrace);
    return model;
  }

  Interaction parse_interaction() {
    expect_word("interaction");
    Interaction in;
    const Token& name = expect(TokenKind::kIdent);
    in.name = name.text;
    if (peek().is_word("realizes")) {
      take();
      in.realizes = expect(TokenKind::kString).text;
    }
    expect(TokenKind::kLBrace);
    bool explicit_participants = false;
    std::set<std::string> participant_set;
    std::set<std::string> message_ids;
    while (!peek().is(TokenKind::kRBrace)) {
      if (peek().is(TokenKind::kEnd)) unexpected("'}'");
      if (saturated()) throw Recover{};
      try {
        if (peek().is_word("participants")) {
          take();
          explicit_participants = true;
          const std::size_t first = pos_;
          auto names = ident_list();
          expect(TokenKind::kSemicolon);
          for (std::size_t k = 0; k < names.size(); ++k) {
            if (!participant_set.insert(names[k]).second) {
              error(code::kDuplicateName, tokens_[first + 2 * k],
                    "duplicate participant '" + names[k] + "'");
            }
            in.participants.push_back(names[k]);
          }
        } else if (peek().is_word("msg")) {
          const Token* id_token = nullptr;
          Message m = parse_message(id_token);
          if (!message_ids.insert(m.id).second) {
            error(code::kDuplicateName, *id_token,
                  "duplicate message id '" + m.id + "'");
          }
          in.messages.push_back(std::move(m));
        } else {
          unexpected("'participants', 'msg' or '}'");
        }
      } catch (const Recover&) {
        sync_statement();
      }
    }
    expect(TokenKind::kRBrace);

    if (!explicit_participants) {
      for (const auto& m : in.messages) {
        for (const auto* p : {&m.sender, &m.receiver}) {
          if (participant_set.insert(*p).second) in.participants.push_back(*p);
        }
      }
    }
    interaction_spans_.push_back(detail::make_span(file_, name.start, name.end));
    return in;
  }

  Message parse_message(const Token*& id_token) {
    expect_word("msg");
    Message m;
    id_token = &expect(TokenKind::kIdent);
    m.id = id_token->text;
    expect(TokenKind::kColon);
    m.sender = expect(TokenKind::kIdent).text;
    expect(TokenKind::kArrow);
    m.receiver = expect(TokenKind::kIdent).text;
    expect(TokenKind::kColon);
    if (peek().is(TokenKind::kIdent) || peek().is(TokenKind::kString)) {
      m.operation = take().text;
    } else {
      unexpected("operation name");
    }
    m.parameters = parameter_list();

    bool seen_after = false;
    while (!peek().is(TokenKind::kSemicolon)) {
      const Token& clause = peek();
      if (clause.is_word("after")) {
        take();
        if (seen_after) error(code::kDuplicateClause, clause, "duplicate 'after' clause");
        seen_after = true;
        m.predecessors = ident_list();
      } else if (clause.is_word("deadline") && peek(1).is_word("send")) {
        take();
        take();
        if (m.send_deadline) error(code::kDuplicateClause, clause, "duplicate send deadline");
        m.send_deadline = duration_bound();
      } else if (clause.is_word("treat")) {
        take();
        if (m.treatment_deadline) {
          error(code::kDuplicateClause, clause, "duplicate treatment deadline");
        }
        m.treatment_deadline = duration_bound();
      } else if (clause.is_word("response")) {
        take();
        if (m.response) error(code::kDuplicateClause, clause, "duplicate 'response' clause");
        Response r;
        r.values = parameter_list();
        if (peek().is_word("deadline") && !peek(1).is_word("send")) {
          take();
          r.receive_deadline = duration_bound();
        }
        m.response = std::move(r);
      } else {
        unexpected("'after', 'deadline send', 'treat', 'response' or ';'");
      }
    }
    take();  // ';'
    return m;
  }

  std::vector<std::string> ident_list() {
    std::vector<std::string> out;
    out.push_back(expect(TokenKind::kIdent).text);
    while (accept(TokenKind::kComma)) out.push_back(expect(TokenKind::kIdent).text);
    return out;
  }

  std::vector<Parameter> parameter_list() {
    expect(TokenKind::kLParen);
    std::vector<Parameter> params;
    std::set<std::string> names;
    if (!peek().is(TokenKind::kRParen)) {
      do {
        const Token& name = expect(TokenKind::kIdent);
        if (!names.insert(name.text).second) {
          error(code::kDuplicateName, name, "duplicate parameter '" + name.text + "'");
        }
        params.push_back(parameter(name.text));
      } while (accept(TokenKind::kComma));
    }
    expect(TokenKind::kRParen);
    return params;
  }

  Parameter parameter(std::string name) {
    Parameter p;
    p.name = std::move(name);
    expect(TokenKind::kColon);
    const Token& type = peek();
    if (type.is_word("number")) {
      p.type = TypeTag::kNumber;
    } else if (type.is_word("text")) {
      p.type = TypeTag::kText;
    } else if (type.is_word("boolean")) {
      p.type = TypeTag::kBoolean;
    } else if (type.is_word("enum")) {
      p.type = TypeTag::kEnum;
    } else {
      unexpected("parameter type ('number', 'text', 'boolean' or 'enum')");
    }
    take();
    if (peek().is_word("in")) {
      take();
      if (accept(TokenKind::kLBrace)) {
        EnumSet set;
        std::set<std::string> seen;
        do {
          const Token& v = expect(TokenKind::kIdent);
          if (!seen.insert(v.text).second) {
            error(code::kDuplicateName, v, "duplicate enum value '" + v.text + "'");
          }
          set.values.push_back(v.text);
        } while (accept(TokenKind::kComma));
        expect(TokenKind::kRBrace);
        p.domain = std::move(set);
      } else {
        NumericInterval iv;
        iv.lower = number();
        expect(TokenKind::kDotDot);
        iv.upper = number();
        if (peek().is(TokenKind::kIdent)) iv.unit = take().text;
        p.domain = std::move(iv);
      }
    }
    return p;
  }

  double number() {
    const Token& t = expect(TokenKind::kNumber);
    double value = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      error(code::kBadNumber, t, "number '" + t.text + "' is out of range");
    }
    return value;
  }

  DurationBound duration_bound() {
    DurationBound b;
    b.min = duration();
    expect(TokenKind::kDotDot);
    b.max = duration();
    return b;
  }

  Duration duration() {
    const Token& value = expect(TokenKind::kNumber);
    Duration d;
    const char* first = value.text.data();
    const char* last = first + value.text.size();
    auto [ptr, ec] = std::from_chars(first, last, d.value);
    if (ec != std::errc{} || ptr != last || d.value < 0) {
      error(code::kBadDuration, value,
            "duration must be a non-negative integer, got '" + value.text + "'");
    }
    const Token& unit = peek();
    const bool adjacent = unit.is(TokenKind::kIdent) &&
                          unit.start.offset == value.end.offset;
    if (adjacent && unit.text == "ms") {
      d.unit = TimeUnit::kMilliseconds;
    } else if (adjacent && unit.text == "s") {
      d.unit = TimeUnit::kSeconds;
    } else if (adjacent && unit.text == "min") {
      d.unit = TimeUnit::kMinutes;
    } else {
      error(code::kBadDuration, adjacent ? unit : value,
            "duration needs a unit suffix: ms, s or min");
      throw Recover{};
    }
    take();
    return d;
  }

  std::string file_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic> diagnostics_;
  std::vector<SourceSpan> interaction_spans_;
};

}  // namespace

ParseResult parse(std::string_view text, std::string_view file) {
  return Parser(text, std::string(file)).run();
}

}  // namespace seqfmeca
