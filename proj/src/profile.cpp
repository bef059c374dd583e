#include "lexer.hpp"
#include "seqfmeca/error_catalog.hpp"

namespace seqfmeca {
namespace {

using detail::Token;
using detail::TokenKind;

struct Stop {};

class ProfileParser {
 public:
  ProfileParser(std::string_view text, std::string file) : file_(std::move(file)) {
    tokens_ = detail::tokenize(text, file_, diagnostics_);
  }

  ProfileParseResult run() {
    ActorProfile profile = ActorProfile::default_profile();
    try {
      while (!peek().is(TokenKind::kEnd)) block(profile);
    } catch (const Stop&) {
    }
    ProfileParseResult result;
    if (!has_errors(diagnostics_)) result.profile = std::move(profile);
    result.diagnostics = std::move(diagnostics_);
    return result;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& at, std::string text) {
    Diagnostic d;
    d.code = std::string(at.is(TokenKind::kEnd) ? code::kUnexpectedEof
                                                : code::kBadProfile);
    d.span = detail::make_span(file_, at.start, at.end);
    d.text = std::move(text);
    diagnostics_.push_back(std::move(d));
    throw Stop{};
  }

  const Token& expect(TokenKind kind) {
    if (!peek().is(kind)) {
      fail(peek(), "expected " + std::string(detail::describe(kind)));
    }
    return take();
  }

  void block(ActorProfile& profile) {
    if (!peek().is_word("profile")) fail(peek(), "expected 'profile'");
    take();
    const Token& kind = expect(TokenKind::kIdent);
    ProfileTable* table = nullptr;
    if (kind.text == "human") {
      table = &profile.human;
    } else if (kind.text == "external") {
      table = &profile.external_system;
    } else if (kind.text == "internal") {
      table = &profile.internal;
    } else {
      fail(kind, "profile kind must be 'human', 'external' or 'internal'");
    }
    expect(TokenKind::kLBrace);
    while (!peek().is(TokenKind::kRBrace)) {
      const Token& error = expect(TokenKind::kIdent);
      auto id = parse_error_model(error.text);
      if (!id) fail(error, "unknown error model '" + error.text + "'");
      const Token& level = expect(TokenKind::kIdent);
      ProfileEntry entry;
      if (level.text == "applies") {
        entry.applicability = Applicability::kApplies;
      } else if (level.text == "rare") {
        entry.applicability = Applicability::kRare;
      } else if (level.text == "suppressed") {
        entry.applicability = Applicability::kSuppressed;
      } else {
        fail(level, "applicability must be 'applies', 'rare' or 'suppressed'");
      }
      if (peek().is(TokenKind::kString)) entry.note = take().text;
      expect(TokenKind::kSemicolon);
      (*table)[*id] = std::move(entry);
    }
    take();
  }

  std::string file_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace

ProfileParseResult parse_profile(std::string_view text, std::string_view file) {
  return ProfileParser(text, std::string(file)).run();
}

}  // namespace seqfmeca
