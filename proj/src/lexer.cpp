#include "lexer.hpp"

#include <optional>

namespace seqfmeca::detail {
namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_alpha(c) || is_digit(c) || c == '_'; }

// Length of the well-formed UTF-8 sequence starting at `s[i]`, or 0.
std::size_t utf8_length(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  unsigned min_cp = 0;
  unsigned cp = 0;
  if (b0 < 0x80) return 1;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min_cp = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min_cp = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min_cp = 0x10000;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& file,
        std::vector<Diagnostic>& diagnostics)
      : text_(text), file_(file), diagnostics_(diagnostics) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_trivia();
      if (at_end()) break;
      const SourcePos start = pos_;
      const char c = peek();
      if (is_alpha(c)) {
        tokens.push_back(lex_word(start));
      } else if (is_digit(c) ||
                 (c == '-' && is_digit(peek(1)))) {
        tokens.push_back(lex_number(start));
      } else if (c == '"') {
        if (auto t = lex_string(start)) tokens.push_back(std::move(*t));
      } else if (c == '-' && peek(1) == '>') {
        advance(2);
        tokens.push_back(simple(TokenKind::kArrow, start));
      } else if (c == '.' && peek(1) == '.') {
        advance(2);
        tokens.push_back(simple(TokenKind::kDotDot, start));
      } else if (auto kind = punct(c)) {
        advance(1);
        tokens.push_back(simple(*kind, start));
      } else {
        illegal(start);
      }
    }
    Token end;
    end.kind = TokenKind::kEnd;
    end.start = end.end = pos_;
    tokens.push_back(end);
    return tokens;
  }

 private:
  bool at_end() const { return pos_.offset >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_.offset + ahead;
    return i < text_.size() ? text_[i] : '\0';
  }
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n && !at_end(); ++k) {
      if (text_[pos_.offset] == '\n') {
        ++pos_.line;
        pos_.column = 1;
      } else {
        ++pos_.column;
      }
      ++pos_.offset;
    }
  }

  void report(std::string_view code, SourcePos start, std::string text) {
    Diagnostic d;
    d.severity = Severity::kError;
    d.code = std::string(code);
    d.span = make_span(file_, start, pos_);
    d.text = std::move(text);
    diagnostics_.push_back(std::move(d));
  }

  void skip_trivia() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance(1);
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') {
          const SourcePos start = pos_;
          const std::size_t len = utf8_length(text_, pos_.offset);
          if (len == 0) {
            advance(1);
            report(code::kInvalidUtf8, start, "invalid UTF-8 in comment");
          } else {
            advance(len);
          }
        }
      } else {
        return;
      }
    }
  }

  Token simple(TokenKind kind, SourcePos start) const {
    Token t;
    t.kind = kind;
    t.start = start;
    t.end = pos_;
    t.text = std::string(text_.substr(start.offset, pos_.offset - start.offset));
    return t;
  }

  Token lex_word(SourcePos start) {
    while (!at_end() && is_ident_char(peek())) advance(1);
    return simple(TokenKind::kIdent, start);
  }

  Token lex_number(SourcePos start) {
    if (peek() == '-') advance(1);
    while (!at_end() && is_digit(peek())) advance(1);
    if (peek() == '.' && is_digit(peek(1))) {
      advance(1);
      while (!at_end() && is_digit(peek())) advance(1);
    }
    return simple(TokenKind::kNumber, start);
  }

  std::optional<Token> lex_string(SourcePos start) {
    advance(1);  // opening quote
    std::string value;
    while (true) {
      if (at_end() || peek() == '\n' || peek() == '\r') {
        report(code::kUnterminatedString, start, "unterminated string literal");
        return std::nullopt;
      }
      const char c = peek();
      if (c == '"') {
        advance(1);
        break;
      }
      if (c == '\\') {
        const SourcePos esc = pos_;
        const char n = peek(1);
        advance(n == '\0' ? 1 : 2);
        switch (n) {
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case 'r': value += '\r'; break;
          default:
            report(code::kUnterminatedString, esc, "invalid escape sequence in string");
        }
        continue;
      }
      const auto uc = static_cast<unsigned char>(c);
      if (uc < 0x20 && c != '\t') {
        const SourcePos bad = pos_;
        advance(1);
        report(code::kIllegalCharacter, bad, "control character in string");
        continue;
      }
      const std::size_t len = utf8_length(text_, pos_.offset);
      if (len == 0) {
        const SourcePos bad = pos_;
        advance(1);
        report(code::kInvalidUtf8, bad, "invalid UTF-8 in string");
        continue;
      }
      value.append(text_.substr(pos_.offset, len));
      advance(len);
    }
    Token t;
    t.kind = TokenKind::kString;
    t.start = start;
    t.end = pos_;
    t.text = std::move(value);
    return t;
  }

  static std::optional<TokenKind> punct(char c) {
    switch (c) {
      case '{': return TokenKind::kLBrace;
      case '}': return TokenKind::kRBrace;
      case '(': return TokenKind::kLParen;
      case ')': return TokenKind::kRParen;
      case ';': return TokenKind::kSemicolon;
      case ':': return TokenKind::kColon;
      case ',': return TokenKind::kComma;
      default: return std::nullopt;
    }
  }

  void illegal(SourcePos start) {
    const auto uc = static_cast<unsigned char>(peek());
    std::size_t len = 1;
    if (uc >= 0x80) {
      len = utf8_length(text_, pos_.offset);
      if (len == 0) {
        advance(1);
        report(code::kInvalidUtf8, start, "invalid UTF-8 byte");
        return;
      }
    }
    const std::string shown(text_.substr(pos_.offset, len));
    advance(len);
    std::string text = "illegal character";
    if (uc >= 0x20 && uc < 0x7F) text += " '" + shown + "'";
    report(code::kIllegalCharacter, start, std::move(text));
  }

  std::string_view text_;
  const std::string& file_;
  std::vector<Diagnostic>& diagnostics_;
  SourcePos pos_;
};

}  // namespace

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdent: return "identifier";
    case TokenKind::kString: return "string";
    case TokenKind::kNumber: return "number";
    case TokenKind::kLBrace: return "'{'";
    case TokenKind::kRBrace: return "'}'";
    case TokenKind::kLParen: return "'('";
    case TokenKind::kRParen: return "')'";
    case TokenKind::kSemicolon: return "';'";
    case TokenKind::kColon: return "':'";
    case TokenKind::kComma: return "','";
    case TokenKind::kArrow: return "'->'";
    case TokenKind::kDotDot: return "'..'";
    case TokenKind::kEnd: return "end of input";
  }
  return "token";
}

SourceSpan make_span(const std::string& file, SourcePos start, SourcePos end) {
  SourceSpan span;
  span.file = file;
  span.start = start;
  span.end = end;
  return span;
}

std::vector<Token> tokenize(std::string_view text, const std::string& file,
                            std::vector<Diagnostic>& diagnostics) {
  return Lexer(text, file, diagnostics).run();
}

}  // namespace seqfmeca::detail
