#include "migmap/call_extractor.hpp"

#include <array>
#include <cctype>

namespace migmap {
namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

// Words that take a parenthesised clause but are not invocations.
bool is_control_keyword(std::string_view w) {
  static constexpr std::array<std::string_view, 11> kWords = {
      "if", "for", "while", "switch", "catch", "synchronized", "try", "return", "this", "super",
      "assert"};
  for (auto k : kWords) {
    if (w == k) return true;
  }
  return false;
}

// Identifiers that may precede an invocation without making it a declaration.
bool is_expression_keyword(std::string_view w) {
  static constexpr std::array<std::string_view, 9> kWords = {
      "return", "throw", "else", "case", "assert", "yield", "do", "new", "await"};
  for (auto k : kWords) {
    if (w == k) return true;
  }
  return false;
}

// Produces a copy of `code` with comments and literal contents blanked out,
// keeping positions and the quote characters themselves.
std::string blank_noise(std::string_view code) {
  std::string out(code);
  std::size_t i = 0;
  while (i < out.size()) {
    if (out.compare(i, 2, "//") == 0) {
      while (i < out.size() && out[i] != '\n') out[i++] = ' ';
    } else if (out.compare(i, 2, "/*") == 0) {
      std::size_t end = out.find("*/", i + 2);
      end = end == std::string::npos ? out.size() : end + 2;
      for (; i < end; ++i) {
        if (out[i] != '\n') out[i] = ' ';
      }
    } else if (out[i] == '"' || out[i] == '\'') {
      const char quote = out[i++];
      while (i < out.size() && out[i] != quote && out[i] != '\n') {
        if (out[i] == '\\' && i + 1 < out.size()) out[i++] = ' ';
        out[i++] = ' ';
      }
      ++i;
    } else {
      ++i;
    }
  }
  return out;
}

std::size_t skip_space(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

// If s[i] == '<' opens a generic argument list, returns the index past the
// matching '>'; otherwise returns i.
std::size_t skip_generic(std::string_view s, std::size_t i) {
  if (i >= s.size() || s[i] != '<') return i;
  int depth = 0;
  for (std::size_t j = i; j < s.size(); ++j) {
    const char c = s[j];
    if (c == '<') ++depth;
    else if (c == '>') {
      if (--depth == 0) return j + 1;
    } else if (!(ident_char(c) || c == '.' || c == ',' || c == '?' || c == '[' || c == ']' ||
                 std::isspace(static_cast<unsigned char>(c)))) {
      return i;
    }
  }
  return i;
}

// Counts top-level arguments of the parenthesised list opening at s[open].
// An unterminated list counts what is present.
std::uint32_t count_arguments(std::string_view s, std::size_t open) {
  int depth = 0;
  std::uint32_t commas = 0;
  bool any = false;
  for (std::size_t j = open + 1; j < s.size(); ++j) {
    const char c = s[j];
    if (c == '(' || c == '[' || c == '{') {
      ++depth;
      any = true;
    } else if (c == ')' || c == ']' || c == '}') {
      if (depth == 0) break;
      --depth;
    } else if (c == '<' && j > 0 && ident_char(s[j - 1])) {
      std::size_t past = skip_generic(s, j);
      if (past != j) {
        j = past - 1;
        any = true;
      }
    } else if (c == ',' && depth == 0) {
      ++commas;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      any = true;
    }
  }
  return any || commas > 0 ? commas + 1 : 0;
}

}  // namespace

std::vector<CallSite> scan_calls(std::string_view raw) {
  const std::string code = blank_noise(raw);
  const std::string_view s = code;
  std::vector<CallSite> out;

  // The last significant token before the current identifier: either an
  // identifier (kept in prev_word) or a punctuation character.
  std::string prev_word;
  char prev_punct = ';';

  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (!ident_start(c)) {
      // Annotation names are never calls.
      if (c == '@') {
        ++i;
        while (i < s.size() && (ident_char(s[i]) || s[i] == '.')) ++i;
        prev_word.clear();
        prev_punct = '@';
        continue;
      }
      prev_word.clear();
      prev_punct = c;
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < s.size() && ident_char(s[end])) ++end;
    const std::string word(s.substr(i, end - i));

    if (word == "new") {
      // new a.b.Type<...>(args)
      std::size_t j = skip_space(s, end);
      std::string type;
      while (j < s.size() && ident_start(s[j])) {
        std::size_t k = j;
        while (k < s.size() && ident_char(s[k])) ++k;
        type.assign(s.substr(j, k - j));
        j = skip_space(s, k);
        if (j < s.size() && s[j] == '.' && j + 1 < s.size() && ident_start(s[skip_space(s, j + 1)])) {
          j = skip_space(s, j + 1);
          continue;
        }
        break;
      }
      j = skip_space(s, skip_generic(s, j));
      if (!type.empty() && j < s.size() && s[j] == '(') {
        out.push_back({type, count_arguments(s, j), true});
      }
      prev_word.clear();
      prev_punct = 0;
      i = type.empty() ? end : j;
      continue;
    }

    const std::size_t after = skip_space(s, end);
    if (after < s.size() && s[after] == '(' && !is_control_keyword(word)) {
      const bool member_access = prev_word.empty() && prev_punct == '.';
      const bool declaration = !member_access && !prev_word.empty() &&
                               !is_expression_keyword(prev_word);
      if (!declaration && prev_punct != '@') {
        out.push_back({word, count_arguments(s, after), false});
      }
    }
    prev_word = word;
    prev_punct = 0;
    i = end;
  }
  return out;
}

std::vector<std::string> extract_imports(std::string_view src) {
  std::vector<std::string> out;
  const std::string code = blank_noise(src);
  std::size_t pos = 0;
  while ((pos = code.find("import", pos)) != std::string::npos) {
    const bool word_start = pos == 0 || !ident_char(code[pos - 1]);
    std::size_t j = pos + 6;
    pos = j;
    if (!word_start || j >= code.size() || !std::isspace(static_cast<unsigned char>(code[j]))) {
      continue;
    }
    j = skip_space(code, j);
    if (code.compare(j, 6, "static") == 0 && j + 6 < code.size() &&
        std::isspace(static_cast<unsigned char>(code[j + 6]))) {
      j = skip_space(code, j + 6);
    }
    std::string name;
    while (j < code.size() && (ident_char(code[j]) || code[j] == '.' || code[j] == '*' ||
                               std::isspace(static_cast<unsigned char>(code[j])))) {
      if (!std::isspace(static_cast<unsigned char>(code[j]))) name += code[j];
      ++j;
    }
    if (j < code.size() && code[j] == ';' && !name.empty()) {
      if (name.ends_with(".*")) name.resize(name.size() - 2);
      out.push_back(std::move(name));
    }
  }
  return out;
}

bool imports_match(const std::vector<std::string>& imports,
                   const std::vector<std::string>& prefixes) {
  for (const auto& imp : imports) {
    for (const auto& p : prefixes) {
      if (p.empty()) continue;
      if (imp == p || (imp.size() > p.size() && imp.starts_with(p) && imp[p.size()] == '.')) {
        return true;
      }
    }
  }
  return false;
}

MethodSet extract_calls(std::string_view lines, const std::vector<std::string>& imports,
                        const ApiIndex& index) {
  MethodSet out;
  if (!imports_match(imports, index.library().package_prefixes)) return out;
  for (const auto& call : scan_calls(lines)) {
    if (auto ref = index.lookup(call.name, call.arity)) out.insert(std::move(*ref));
  }
  return out;
}

}  // namespace migmap

namespace migmap {

bool references_library(std::string_view java_source,
                        const std::vector<std::string>& package_prefixes) {
  if (imports_match(extract_imports(java_source), package_prefixes)) return true;
  const std::string code = blank_noise(java_source);
  for (const auto& p : package_prefixes) {
    if (p.empty()) continue;
    const std::string needle = p + ".";
    for (std::size_t pos = code.find(needle); pos != std::string::npos;
         pos = code.find(needle, pos + 1)) {
      const bool bounded = pos == 0 || !(ident_char(code[pos - 1]) || code[pos - 1] == '.');
      if (!bounded) continue;
      // Skip the package and import declarations themselves; imports were
      // handled above.
      std::size_t line_start = code.rfind('\n', pos);
      line_start = line_start == std::string::npos ? 0 : line_start + 1;
      const std::size_t first = skip_space(code, line_start);
      if (code.compare(first, 7, "package") == 0 || code.compare(first, 6, "import") == 0) {
        continue;
      }
      return true;
    }
  }
  return false;
}

}  // namespace migmap
