#include "migmap/unified_diff.hpp"

#include <charconv>

#include "migmap/errors.hpp"

namespace migmap {
namespace {

std::string strip_prefix(std::string_view path) {
  if (path.size() >= 2 && path.front() == '"' && path.back() == '"') {
    path = path.substr(1, path.size() - 2);
  }
  if (path == "/dev/null") return {};
  if (path.starts_with("a/") || path.starts_with("b/")) path.remove_prefix(2);
  return std::string(path);
}

// "-l,s" / "+l,s" / "-l"
void parse_range(std::string_view token, int& start, int& count) {
  token.remove_prefix(1);
  auto comma = token.find(',');
  auto first = token.substr(0, comma);
  if (std::from_chars(first.data(), first.data() + first.size(), start).ec != std::errc()) {
    throw DataError("malformed hunk range");
  }
  count = 1;
  if (comma != std::string_view::npos) {
    auto second = token.substr(comma + 1);
    if (std::from_chars(second.data(), second.data() + second.size(), count).ec != std::errc()) {
      throw DataError("malformed hunk range");
    }
  }
}

Hunk parse_hunk_header(std::string_view line) {
  // @@ -a,b +c,d @@ optional section heading
  auto end = line.find("@@", 2);
  if (end == std::string_view::npos) throw DataError("malformed hunk header: " + std::string(line));
  std::string_view body = line.substr(2, end - 2);
  while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
  auto space = body.find(' ');
  if (space == std::string_view::npos) throw DataError("malformed hunk header: " + std::string(line));
  std::string_view old_range = body.substr(0, space);
  std::string_view new_range = body.substr(space + 1);
  while (!new_range.empty() && new_range.back() == ' ') new_range.remove_suffix(1);
  if (old_range.empty() || old_range.front() != '-' || new_range.empty() ||
      new_range.front() != '+') {
    throw DataError("malformed hunk header: " + std::string(line));
  }
  Hunk h;
  parse_range(old_range, h.old_start, h.old_count);
  parse_range(new_range, h.new_start, h.new_count);
  return h;
}

}  // namespace

std::vector<std::string> Hunk::lines_of(char kind) const {
  std::vector<std::string> out;
  for (const auto& l : lines) {
    if (l.kind == kind) out.push_back(l.text);
  }
  return out;
}

std::vector<FileDiff> parse_unified_diff(std::string_view text) {
  std::vector<FileDiff> files;
  FileDiff* cur = nullptr;
  Hunk* hunk = nullptr;
  int old_left = 0, new_left = 0;

  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (hunk && (old_left > 0 || new_left > 0)) {
      char kind = line.empty() ? ' ' : line.front();
      if (kind == '\\') continue;  // "\ No newline at end of file"
      if (kind == ' ' || kind == '-' || kind == '+') {
        hunk->lines.push_back({kind, std::string(line.empty() ? line : line.substr(1))});
        if (kind != '+') --old_left;
        if (kind != '-') --new_left;
        continue;
      }
      hunk = nullptr;  // truncated hunk; fall through and treat as header
    }

    if (line.starts_with("diff --git ")) {
      files.emplace_back();
      cur = &files.back();
      hunk = nullptr;
      // Paths are refined by the ---/+++ or rename lines that follow.
      std::string_view rest = line.substr(11);
      auto split = rest.find(" b/");
      if (split != std::string_view::npos) {
        cur->old_path = strip_prefix(rest.substr(0, split));
        cur->new_path = strip_prefix(rest.substr(split + 1));
      }
    } else if (!cur) {
      continue;
    } else if (line.starts_with("new file mode")) {
      cur->old_path.clear();
    } else if (line.starts_with("deleted file mode")) {
      cur->new_path.clear();
    } else if (line.starts_with("rename from ")) {
      cur->old_path = std::string(line.substr(12));
    } else if (line.starts_with("rename to ")) {
      cur->new_path = std::string(line.substr(10));
    } else if (line.starts_with("--- ")) {
      cur->old_path = strip_prefix(line.substr(4));
    } else if (line.starts_with("+++ ")) {
      cur->new_path = strip_prefix(line.substr(4));
    } else if (line.starts_with("Binary files ")) {
      cur->binary = true;
    } else if (line.starts_with("@@")) {
      cur->hunks.push_back(parse_hunk_header(line));
      hunk = &cur->hunks.back();
      old_left = hunk->old_count;
      new_left = hunk->new_count;
    }
  }
  return files;
}

}  // namespace migmap
