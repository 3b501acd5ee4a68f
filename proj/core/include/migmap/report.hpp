#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace migmap {

std::string_view tool_version();

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits. Used for config and
/// resource fingerprints recorded in report headers.
std::string fingerprint(std::string_view bytes);

/// Provenance block written at the top of every report.
struct ReportHeader {
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> fields;
  bool timestamp = true;

  void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }

  /// `# key=value` lines. The timestamp line, when enabled, is the only
  /// content that differs between identical runs.
  std::string comment_lines() const;
};

/// Writes via a temporary file in the same directory and renames it into
/// place, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Quotes a CSV field when it contains a delimiter, quote or newline.
std::string csv_field(std::string_view value);

/// Fixed-precision rendering used in CSV reports.
std::string format_double(double value, int precision = 6);

}  // namespace migmap
