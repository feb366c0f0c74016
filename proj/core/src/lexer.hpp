#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "petri/error.hpp"

namespace petri::detail {

struct Token {
  enum class Kind { ident, quoted, punct };
  Kind kind;
  std::string text;

  bool is_word() const { return kind != Kind::punct; }
  bool is_keyword(std::string_view k) const { return kind == Kind::ident && text == k; }
  bool is(std::string_view p) const { return kind == Kind::punct && text == p; }
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

/// Splits `text` into non-empty token lines. `#` at the start of a token
/// begins a comment; `"..."` quotes an identifier (with `\"` and `\\`
/// escapes). Punctuation: { } ( ) , : = -> <= and U+2286.
std::vector<Line> tokenize(std::string_view text, const std::string& source);

/// Cursor over one line with error reporting.
class LineReader {
 public:
  LineReader(const Line& line, const std::string& source)
      : line_(line), source_(source) {}

  bool done() const { return pos_ >= line_.tokens.size(); }
  const Token* peek() const { return done() ? nullptr : &line_.tokens[pos_]; }
  bool peek_punct(std::string_view p) const { return peek() && peek()->is(p); }
  bool peek_keyword(std::string_view k) const { return peek() && peek()->is_keyword(k); }

  const Token& next();
  std::string word(const char* what);
  void expect(std::string_view punct);
  bool accept(std::string_view punct);
  bool accept_keyword(std::string_view k);
  std::size_t natural(const char* what);
  void finish();

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(source_, line_.number, what);
  }
  std::size_t number() const { return line_.number; }

 private:
  const Line& line_;
  const std::string& source_;
  std::size_t pos_ = 0;
};

}  // namespace petri::detail
