#ifndef QHL_LANG_LEXER_HPP
#define QHL_LANG_LEXER_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "qhl/error.hpp"
#include "qhl/lang/ast.hpp"

namespace qhl::lang {

enum class TokenKind { Ident, Nat, Float, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourcePos pos;

  bool is(std::string_view punct) const { return kind == TokenKind::Punct && text == punct; }
  bool is_word(std::string_view word) const { return kind == TokenKind::Ident && text == word; }
};

inline std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::End:
      return "end of input";
    case TokenKind::Ident:
      return "identifier '" + t.text + "'";
    case TokenKind::Nat:
    case TokenKind::Float:
      return "number '" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

/// Splits source text into tokens; '#' starts a line comment. Multi-character
/// punctuation: ":=", "->", "|0>". Float literals (digits with '.' or an
/// exponent) are recognised separately from naturals.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok;
    tok.pos = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      tok.kind = TokenKind::Ident;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      bool is_float = false;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        is_float = true;
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          is_float = true;
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      tok.kind = is_float ? TokenKind::Float : TokenKind::Nat;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      static constexpr std::string_view kLong[] = {":=", "->", "|0>"};
      tok.kind = TokenKind::Punct;
      for (auto p : kLong) {
        if (src.substr(i, p.size()) == p) {
          tok.text = std::string(p);
          break;
        }
      }
      if (tok.text.empty()) {
        static constexpr std::string_view kSingle = ":;,[]{}()=+-*/";
        if (kSingle.find(c) == std::string_view::npos)
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        tok.text = std::string(1, c);
      }
      advance(tok.text.size());
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

/// Cursor over a token vector with expectation helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[k];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == TokenKind::End; }

  bool accept(std::string_view punct) {
    if (!peek().is(punct)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view word) {
    if (!peek().is_word(word)) return false;
    next();
    return true;
  }

  const Token& expect(std::string_view punct) {
    if (!peek().is(punct)) fail("expected '" + std::string(punct) + "'");
    return next();
  }
  const Token& expect_word(std::string_view word) {
    if (!peek().is_word(word)) fail("expected '" + std::string(word) + "'");
    return next();
  }
  const Token& expect_kind(TokenKind kind, std::string_view what) {
    if (peek().kind != kind) fail("expected " + std::string(what));
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg + ", found " + describe(t), t.pos.line, t.pos.col);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace qhl::lang

#endif  // QHL_LANG_LEXER_HPP
