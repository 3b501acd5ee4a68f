#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "migmap/api_index.hpp"
#include "migmap/evaluation.hpp"

namespace migmap {

/// A library known to the run: coordinates, packages and its API catalogs.
struct LibraryConfig {
  std::string alias;
  LibraryRef library;
  std::filesystem::path catalog;                          // default catalog
  std::map<std::string, std::filesystem::path> versions;  // version -> catalog
};

/// Catalog chosen for a library version.
struct CatalogChoice {
  std::filesystem::path path;
  std::string version;  // empty for the default catalog
  bool fallback = false;  // requested version had no catalog of its own
};

/// Exact version match first, else the newest versioned catalog, else the
/// default one.
CatalogChoice select_catalog(const LibraryConfig& lib, const std::string& version);

/// Orders version strings numerically by dot/dash separated segments.
bool version_less(const std::string& a, const std::string& b);

struct ExperimentPaths {
  std::filesystem::path truth;
  std::filesystem::path source_catalog;
  std::filesystem::path target_catalog;
};

/// Declarative run configuration. Relative paths are resolved against the
/// directory of the configuration file.
struct RunConfig {
  std::filesystem::path file;
  std::string hash;  // fingerprint of the configuration text
  std::filesystem::path workdir = "work";
  std::filesystem::path out = "out";
  std::filesystem::path corpus;
  std::uint64_t seed = 42;

  FcOptions fc;
  double fs_threshold = 0.5;
  double ld_floor = 0.5;

  std::map<std::string, LibraryConfig> libraries;

  std::optional<ExperimentPaths> experiment_paths;
  ExperimentConfig experiment;

  /// Finds a library by alias or by `group:artifact`. Throws ConfigError.
  const LibraryConfig& library(const std::string& name) const;
};

/// Parses TOML-style configuration text. Throws ConfigError on unknown keys,
/// bad values or referenced paths that do not exist.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir,
                           const std::string& source_name = "<config>");
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace migmap
