#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace migmap {

struct DiffLine {
  char kind = ' ';  // ' ' context, '-' removed, '+' added
  std::string text;
};

struct Hunk {
  int old_start = 0;
  int old_count = 0;
  int new_start = 0;
  int new_count = 0;
  std::vector<DiffLine> lines;

  std::vector<std::string> lines_of(char kind) const;
};

struct FileDiff {
  std::string old_path;  // empty for added files
  std::string new_path;  // empty for deleted files
  bool binary = false;
  std::vector<Hunk> hunks;

  const std::string& path() const { return new_path.empty() ? old_path : new_path; }
};

/// Parses `git diff` output. Throws DataError on a malformed hunk header.
std::vector<FileDiff> parse_unified_diff(std::string_view text);

}  // namespace migmap
