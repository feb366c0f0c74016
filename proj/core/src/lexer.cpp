#include "lexer.hpp"

#include <charconv>

#include "text_util.hpp"

namespace petri::detail {

std::vector<Line> tokenize(std::string_view text, const std::string& source) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      const char c = raw[i];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
      } else if (c == '#') {
        break;
      } else if (c == '"') {
        std::string value;
        ++i;
        bool closed = false;
        while (i < raw.size()) {
          if (raw[i] == '\\' && i + 1 < raw.size()) {
            value += raw[i + 1];
            i += 2;
          } else if (raw[i] == '"') {
            closed = true;
            ++i;
            break;
          } else {
            value += raw[i++];
          }
        }
        if (!closed) throw ParseError(source, number, "unterminated quoted identifier");
        line.tokens.push_back({Token::Kind::quoted, std::move(value)});
      } else if (raw.substr(i, 2) == "->" || raw.substr(i, 2) == "<=") {
        line.tokens.push_back({Token::Kind::punct, std::string(raw.substr(i, 2))});
        i += 2;
      } else if (raw.substr(i, 3) == "\xE2\x8A\x86") {  // ⊆
        line.tokens.push_back({Token::Kind::punct, "<="});
        i += 3;
      } else if (std::string_view("{}(),:=").find(c) != std::string_view::npos) {
        line.tokens.push_back({Token::Kind::punct, std::string(1, c)});
        ++i;
      } else if (is_ident_char(c)) {
        std::size_t j = i;
        while (j < raw.size() && is_ident_char(raw[j]) && raw.substr(j, 2) != "->") ++j;
        line.tokens.push_back({Token::Kind::ident, std::string(raw.substr(i, j - i))});
        i = j;
      } else {
        throw ParseError(source, number,
                         std::string("unexpected character '") + c + "'");
      }
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

const Token& LineReader::next() {
  if (done()) fail("unexpected end of line");
  return line_.tokens[pos_++];
}

std::string LineReader::word(const char* what) {
  if (done()) fail(std::string("expected ") + what);
  const Token& t = line_.tokens[pos_];
  if (!t.is_word()) fail(std::string("expected ") + what + ", found '" + t.text + "'");
  ++pos_;
  return t.text;
}

void LineReader::expect(std::string_view punct) {
  if (!accept(punct))
    fail("expected '" + std::string(punct) + "'" +
         (done() ? std::string() : ", found '" + peek()->text + "'"));
}

bool LineReader::accept(std::string_view punct) {
  if (!peek_punct(punct)) return false;
  ++pos_;
  return true;
}

bool LineReader::accept_keyword(std::string_view k) {
  if (!peek_keyword(k)) return false;
  ++pos_;
  return true;
}

std::size_t LineReader::natural(const char* what) {
  const auto text = word(what);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    fail(std::string("expected ") + what + ", found '" + text + "'");
  return value;
}

void LineReader::finish() {
  if (!done()) fail("unexpected '" + peek()->text + "'");
}

}  // namespace petri::detail
