#pragma once

#include <string>
#include <string_view>

namespace petri::detail {

/// Characters allowed in a bare (unquoted) identifier.
inline bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.' ||
         c == '\'' || c == '#' || c == '@' || c == '~' || c == '!' ||
         c == '$' || c == '?' || c == '/' || c == '+' || c == '*';
}

/// Words that cannot appear bare inside an identifier position because the
/// line grammar would read them as keywords or punctuation.
inline bool needs_quotes(std::string_view id) {
  if (id.empty() || id.front() == '#') return true;
  for (std::size_t i = 0; i < id.size(); ++i) {
    char c = id[i];
    if (!is_ident_char(c)) return true;
    if (c == '-' && i + 1 < id.size() && id[i + 1] == '>') return true;
  }
  return id == "init";
}

inline std::string quote_if_needed(std::string_view id) {
  if (!needs_quotes(id)) return std::string(id);
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace petri::detail
