#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "seqfmeca/diagnostic.hpp"

namespace seqfmeca::detail {

enum class TokenKind {
  kIdent,
  kString,
  kNumber,
  kLBrace,
  kRBrace,
  kLParen,
  kRParen,
  kSemicolon,
  kColon,
  kComma,
  kArrow,
  kDotDot,
  kEnd,
};

std::string_view describe(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;  // identifier/number lexeme, or the unescaped string
  SourcePos start;
  SourcePos end;

  bool is(TokenKind k) const { return kind == k; }
  bool is_word(std::string_view w) const {
    return kind == TokenKind::kIdent && text == w;
  }
};

// Splits source text into tokens. Lexical problems are appended to
// `diagnostics` and the offending bytes are skipped; the token list always
// ends with a kEnd token.
std::vector<Token> tokenize(std::string_view text, const std::string& file,
                            std::vector<Diagnostic>& diagnostics);

SourceSpan make_span(const std::string& file, SourcePos start, SourcePos end);

}  // namespace seqfmeca::detail
