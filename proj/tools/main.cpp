#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "migmap/commands.hpp"
#include "migmap/errors.hpp"

namespace {

void add_common(CLI::App* cmd, std::string& config,
                std::string& workdir, std::string& out, std::uint64_t& seed, bool& no_timestamp) {
  cmd->add_option("--config", config, "Run configuration file");
  cmd->add_option("--workdir", workdir, "Directory holding project indexes");
  cmd->add_option("--out", out, "Output directory");
  cmd->add_option("--seed", seed, "Random seed");
  cmd->add_flag("--no-timestamp", no_timestamp, "Omit the generated= header line");
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("migmap");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  if (const char* level = std::getenv("MIGMAP_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }

  CLI::App app{"Mine API migration mappings from project histories"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  migmap::CommandOptions options;
  std::string config, workdir, out;
  std::uint64_t seed = 0;
  bool no_timestamp = false;

  auto* mine = app.add_subcommand("mine", "Index the repositories of a corpus manifest");
  add_common(mine, config, workdir, out, seed, no_timestamp);
  std::string corpus;
  mine->add_option("--corpus", corpus, "Corpus manifest (one repository path per line)");

  auto* detect = app.add_subcommand("detect", "Detect migration segments and fragments");
  add_common(detect, config, workdir, out, seed, no_timestamp);
  std::string rule;
  detect->add_option("--rule", rule, "Migration rule <src>:<dst>")->required();

  auto* map = app.add_subcommand("map", "Derive method mappings from a fragment file");
  add_common(map, config, workdir, out, seed, no_timestamp);
  std::string fragments, map_rule, source_catalog, target_catalog;
  bool no_ld = false;
  map->add_option("--fragments", fragments, "Fragment file (JSON lines)")->required();
  map->add_option("--rule", map_rule, "Rule whose catalogs provide documentation");
  map->add_option("--source-catalog", source_catalog, "Source library API catalog");
  map->add_option("--target-catalog", target_catalog, "Target library API catalog");
  map->add_flag("--no-ld", no_ld, "Disable documentation-based splitting");

  auto* eval = app.add_subcommand("eval", "Run the synthetic comparison experiment");
  add_common(eval, config, workdir, out, seed, no_timestamp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(migmap::ExitCode::Usage);
  }
  if (verbose) spdlog::set_level(spdlog::level::debug);

  auto* active = app.get_subcommands().front();
  if (!config.empty()) options.config = config;
  if (!workdir.empty()) options.workdir = workdir;
  if (!out.empty()) options.out = out;
  if (active->count("--seed")) options.seed = seed;
  options.timestamp = !no_timestamp;

  try {
    if (active == mine) {
      return migmap::cmd_mine(options, corpus.empty() ? std::nullopt
                                                      : std::optional<std::filesystem::path>(corpus));
    }
    if (active == detect) return migmap::cmd_detect(options, rule);
    if (active == map) {
      migmap::MapInputs in;
      in.fragments = fragments;
      if (!map_rule.empty()) in.rule = map_rule;
      if (!source_catalog.empty()) in.source_catalog = source_catalog;
      if (!target_catalog.empty()) in.target_catalog = target_catalog;
      if (no_ld) in.enable_ld = false;
      return migmap::cmd_map(options, in);
    }
    if (active == eval) return migmap::cmd_eval(options);
  } catch (const migmap::Error& e) {
    spdlog::error("{}", e.what());
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    return static_cast<int>(migmap::ExitCode::Internal);
  }
  return static_cast<int>(migmap::ExitCode::Usage);
}
