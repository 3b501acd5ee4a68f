#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace migmap {

/// Flags shared by every command; unset values fall back to the config file.
struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> workdir;
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  bool timestamp = true;
  std::ostream* console = nullptr;  // defaults to std::cout
};

/// Indexes every repository of the corpus manifest (one path per line).
/// Unreadable repositories are skipped; fails only when none succeeds.
int cmd_mine(const CommandOptions& options,
             const std::optional<std::filesystem::path>& corpus = std::nullopt);

/// Detects segments and fragments for `rule` ("src:dst", library aliases or
/// coordinates) over the indexed projects. Writes segments.csv and
/// fragments.jsonl under `<out>/<src>__<dst>/`.
int cmd_detect(const CommandOptions& options, const std::string& rule);

struct MapInputs {
  std::filesystem::path fragments;
  std::optional<std::string> rule;
  std::optional<std::filesystem::path> source_catalog;
  std::optional<std::filesystem::path> target_catalog;
  std::optional<bool> enable_ld;
};

/// Runs substitution over a fragment file and writes mappings.jsonl and
/// mappings.csv into the output directory.
int cmd_map(const CommandOptions& options, const MapInputs& inputs);

/// Runs the synthetic experiment of the config's [experiment] section and
/// writes curves.csv, curves.json, summary.csv and ld_usage.csv.
int cmd_eval(const CommandOptions& options);

}  // namespace migmap
