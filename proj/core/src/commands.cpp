#include "migmap/commands.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "migmap/config.hpp"
#include "migmap/corpus.hpp"
#include "migmap/detection.hpp"
#include "migmap/errors.hpp"
#include "migmap/evaluation.hpp"
#include "migmap/keyphrase.hpp"
#include "migmap/report.hpp"
#include "migmap/substitution.hpp"

namespace migmap {
namespace fs = std::filesystem;

namespace {

std::ostream& console(const CommandOptions& o) { return o.console ? *o.console : std::cout; }

std::optional<RunConfig> maybe_config(const CommandOptions& o) {
  if (!o.config) return std::nullopt;
  return load_run_config(*o.config);
}

fs::path workdir_of(const CommandOptions& o, const std::optional<RunConfig>& cfg) {
  if (o.workdir) return *o.workdir;
  if (cfg) return cfg->workdir;
  return "work";
}

fs::path out_of(const CommandOptions& o, const std::optional<RunConfig>& cfg) {
  if (o.out) return *o.out;
  if (cfg) return cfg->out;
  return "out";
}

ReportHeader header_for(const CommandOptions& o, const std::optional<RunConfig>& cfg,
                        const std::string& command) {
  ReportHeader h;
  h.config_hash = cfg ? cfg->hash : fingerprint("");
  h.timestamp = o.timestamp;
  h.add("command", command);
  h.add("stopwords", StopwordList::builtin().fingerprint());
  return h;
}

std::string join_encodings(const MethodSet& set, const char* sep) {
  std::string out;
  for (const auto& m : set) {
    if (!out.empty()) out += sep;
    out += m.encoding();
  }
  return out;
}

std::pair<std::string, std::string> split_rule(const std::string& rule) {
  // alias:alias, g:a:g:a, or src->dst
  if (auto arrow = rule.find("->"); arrow != std::string::npos) {
    return {rule.substr(0, arrow), rule.substr(arrow + 2)};
  }
  std::vector<std::string> parts;
  std::stringstream ss(rule);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() == 2 && !parts[0].empty() && !parts[1].empty()) return {parts[0], parts[1]};
  if (parts.size() == 4) return {parts[0] + ":" + parts[1], parts[2] + ":" + parts[3]};
  throw ConfigError("rule must look like <src>:<dst>, got '" + rule + "'");
}

class CatalogCache {
 public:
  const ApiIndex& get(const LibraryConfig& lib, Side side, const std::string& version,
                      CatalogChoice* choice = nullptr) {
    const CatalogChoice c = select_catalog(lib, version);
    if (choice) *choice = c;
    if (c.path.empty()) throw ConfigError("no catalog configured for " + lib.alias);
    if (!fs::exists(c.path)) throw ConfigError("catalog missing: " + c.path.string());
    const std::string key = lib.alias + "|" + c.path.string();
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      LibraryRef ref = lib.library;
      ref.version = c.version;
      it = cache_.emplace(key, build_api_index(c.path, ref, side)).first;
    }
    return it->second;
  }

 private:
  std::map<std::string, ApiIndex> cache_;
};

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-' && c != '_') c = '_';
  }
  return s;
}

}  // namespace

int cmd_mine(const CommandOptions& options, const std::optional<fs::path>& corpus_flag) {
  const auto cfg = maybe_config(options);
  fs::path manifest;
  if (corpus_flag) {
    manifest = *corpus_flag;
  } else if (cfg && !cfg->corpus.empty()) {
    manifest = cfg->corpus;
  } else {
    throw ConfigError("no corpus manifest; pass --corpus <file> or set 'corpus' in the config");
  }
  if (!fs::is_regular_file(manifest)) {
    throw ConfigError("corpus manifest not found: " + manifest.string());
  }
  std::vector<fs::path> repos;
  {
    std::ifstream in(manifest);
    for (std::string line; std::getline(in, line);) {
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      const auto e = line.find_last_not_of(" \t\r");
      fs::path p = line.substr(b, e - b + 1);
      repos.push_back(p.is_absolute() ? p : (fs::absolute(manifest).parent_path() / p).lexically_normal());
    }
  }
  if (repos.empty()) {
    throw ConfigError("corpus manifest " + manifest.string() +
                      " lists no repositories (one repository path per line)");
  }

  const fs::path workdir = workdir_of(options, cfg);
  std::size_t ok = 0, commits = 0, manifest_changes = 0, dependency_changes = 0;
  std::vector<std::string> skipped;
  for (const auto& repo : repos) {
    try {
      ProjectIndex index = scan_repository(repo);
      auto changes = extract_dependency_changes(index);
      write_index(index, changes, workdir);
      ++ok;
      commits += index.commits.size();
      manifest_changes += index.manifests.size();
      dependency_changes += changes.size();
      for (const auto& v : index.timestamp_violations) {
        spdlog::warn("{}: commit {} is older than its parent", index.project, v);
      }
    } catch (const Error& e) {
      spdlog::warn("skipping {}: {}", repo.string(), e.what());
      skipped.push_back(repo.string());
    }
  }
  auto& out = console(options);
  out << "projects indexed: " << ok << "\n"
      << "projects skipped: " << skipped.size() << "\n"
      << "commits: " << commits << "\n"
      << "manifest changes: " << manifest_changes << "\n"
      << "dependency changes: " << dependency_changes << "\n";
  if (ok == 0) throw DataError("no repository of the corpus could be indexed");
  return 0;
}

int cmd_detect(const CommandOptions& options, const std::string& rule_text) {
  const auto cfg = maybe_config(options);
  if (!cfg) throw ConfigError("detect needs --config naming the rule's libraries and catalogs");
  const auto [src_name, dst_name] = split_rule(rule_text);
  const LibraryConfig& src = cfg->library(src_name);
  const LibraryConfig& dst = cfg->library(dst_name);
  const MigrationRule rule(src.library, dst.library);

  const fs::path workdir = workdir_of(options, cfg);
  const auto projects = list_indexed_projects(workdir);
  if (projects.empty()) {
    throw DataError("no indexed projects under " + workdir.string() + "; run 'mine' first");
  }

  CatalogCache catalogs;
  const ApiIndex& src_default = catalogs.get(src, Side::Source, "");
  const ApiIndex& dst_default = catalogs.get(dst, Side::Target, "");

  std::ostringstream seg_csv;
  seg_csv << "project,start_commit,end_commit,source_version,target_version,source_catalog,"
             "target_catalog,catalog_fallback\n";
  std::vector<Fragment> all;
  std::size_t segment_count = 0;
  for (const auto& project : projects) {
    const ProjectIndex index = load_index(workdir, project);
    const auto changes = load_dependency_changes(workdir, project);
    for (const auto& seg : detect_segments(index, changes, rule, src_default, dst_default)) {
      CatalogChoice sc, tc;
      const ApiIndex& sapi = catalogs.get(src, Side::Source, seg.source_version, &sc);
      const ApiIndex& tapi = catalogs.get(dst, Side::Target, seg.target_version, &tc);
      const bool fallback = (sc.fallback && !src.versions.empty()) ||
                            (tc.fallback && !dst.versions.empty());
      if (fallback) {
        spdlog::warn("{}: no catalog for {} {} / {} {}; using nearest available", project,
                     src.alias, seg.source_version, dst.alias, seg.target_version);
      }
      seg_csv << csv_field(seg.project) << ',' << seg.start_commit << ',' << seg.end_commit
              << ',' << csv_field(seg.source_version) << ',' << csv_field(seg.target_version)
              << ',' << csv_field(sc.path.filename().string()) << ','
              << csv_field(tc.path.filename().string()) << ',' << (fallback ? "true" : "false")
              << '\n';
      auto frags = extract_fragments(index, seg, sapi, tapi);
      all.insert(all.end(), frags.begin(), frags.end());
      ++segment_count;
    }
  }
  const FragmentSet set = dedup_fragments(all);

  ReportHeader header = header_for(options, cfg, "detect");
  header.add("rule", rule.name());
  const fs::path dir = out_of(options, cfg) / (sanitize(src.alias) + "__" + sanitize(dst.alias));
  write_file_atomic(dir / "segments.csv", header.comment_lines() + seg_csv.str());
  std::string jsonl = header.comment_lines();
  for (const auto& f : set) jsonl += fragment_to_json(f) + "\n";
  write_file_atomic(dir / "fragments.jsonl", jsonl);

  std::map<std::uint64_t, std::size_t> histogram;
  std::map<std::string, std::size_t> by_cardinality;
  for (const auto& f : set) {
    ++histogram[f.frequency];
    ++by_cardinality[std::string(to_string(cardinality_of(f)))];
  }
  auto& out = console(options);
  out << "rule: " << rule.name() << "\n"
      << "segments: " << segment_count << "\n"
      << "fragments: " << set.size() << " (total frequency " << set.total_frequency() << ")\n";
  for (const auto& [freq, n] : histogram) out << "  frequency " << freq << ": " << n << "\n";
  for (const auto& [card, n] : by_cardinality) out << "  " << card << ": " << n << "\n";
  out << "written: " << (dir / "fragments.jsonl").string() << "\n";
  return 0;
}

int cmd_map(const CommandOptions& options, const MapInputs& inputs) {
  const auto cfg = maybe_config(options);
  if (!fs::is_regular_file(inputs.fragments)) {
    throw ConfigError("fragment file not found: " + inputs.fragments.string());
  }
  std::vector<Fragment> fragments;
  {
    std::ifstream in(inputs.fragments);
    try {
      fragments = read_fragments(in);
    } catch (const DataError& e) {
      throw DataError(inputs.fragments.string() + ": " + e.what());
    }
  }

  std::optional<ApiIndex> source, target;
  std::string rule_name;
  if (inputs.rule) {
    if (!cfg) throw ConfigError("--rule needs --config");
    const auto [s, t] = split_rule(*inputs.rule);
    CatalogCache catalogs;
    source = catalogs.get(cfg->library(s), Side::Source, "");
    target = catalogs.get(cfg->library(t), Side::Target, "");
    rule_name = MigrationRule(cfg->library(s).library, cfg->library(t).library).name();
  }
  if (inputs.source_catalog) {
    source = build_api_index(*inputs.source_catalog, LibraryRef{}, Side::Source);
  }
  if (inputs.target_catalog) {
    target = build_api_index(*inputs.target_catalog, LibraryRef{}, Side::Target);
  }
  if (source.has_value() != target.has_value()) {
    throw ConfigError("map needs catalogs for both sides of the rule");
  }

  SubstitutionOptions sopts;
  if (cfg) sopts.ld_floor = cfg->ld_floor;
  sopts.enable_ld = inputs.enable_ld.value_or(true) && source.has_value();
  std::optional<CatalogSimilarity> similarity;
  if (sopts.enable_ld) {
    similarity.emplace(*source, *target);
  } else if (inputs.enable_ld.value_or(true)) {
    spdlog::warn("no catalogs given; documentation splitting disabled");
  }

  const FragmentSet set = dedup_fragments(fragments);
  const auto result = substitution(set, similarity ? &*similarity : nullptr, sopts);

  ReportHeader header = header_for(options, cfg, "map");
  if (!rule_name.empty()) header.add("rule", rule_name);
  header.add("input", inputs.fragments.filename().string());
  header.add("input_hash", fingerprint(read_file(inputs.fragments)));
  header.add("ld", sopts.enable_ld ? "enabled" : "disabled");
  header.add("ld_floor", format_double(sopts.ld_floor, 4));
  header.add("ld_invocations", std::to_string(result.stats.ld_invocations));
  header.add("ld_splits", std::to_string(result.stats.ld_successes));
  header.add("intersections", std::to_string(result.stats.intersections));
  const std::string head = header.comment_lines();

  std::string jsonl = head;
  std::string csv = head + "removed,added,cardinality,support,similarity,resolved\n";
  for (const auto& m : result.mappings) {
    jsonl += mapping_to_json(m) + "\n";
    csv += csv_field(join_encodings(m.removed, " ")) + ',' +
           csv_field(join_encodings(m.added, " ")) + ',' + std::string(to_string(m.cardinality())) +
           ',' + std::to_string(m.support) + ',' +
           (m.similarity ? format_double(*m.similarity, 4) : std::string()) + ',' +
           (m.resolved ? "true" : "false") + '\n';
  }
  const fs::path dir = out_of(options, cfg);
  write_file_atomic(dir / "mappings.jsonl", jsonl);
  write_file_atomic(dir / "mappings.csv", csv);

  auto& out = console(options);
  std::size_t unresolved = 0;
  for (const auto& m : result.mappings) unresolved += m.resolved ? 0 : 1;
  out << "fragments: " << set.size() << "\n"
      << "mappings: " << result.mappings.size() << " (" << unresolved << " unresolved)\n"
      << "intersections: " << result.stats.intersections << "\n"
      << "ld invocations: " << result.stats.ld_invocations << " (" << result.stats.ld_successes
      << " splits)\n"
      << "written: " << (dir / "mappings.jsonl").string() << "\n";
  return 0;
}

int cmd_eval(const CommandOptions& options) {
  const auto cfg = maybe_config(options);
  if (!cfg) throw ConfigError("eval needs --config with an [experiment] section");
  if (!cfg->experiment_paths) throw ConfigError("config has no [experiment] section");
  ExperimentConfig exp = cfg->experiment;
  if (options.seed) exp.seed = *options.seed;
  exp.validate();

  const auto& paths = *cfg->experiment_paths;
  const GroundTruth pool = load_ground_truth(paths.truth);
  const ApiIndex source = build_api_index(paths.source_catalog, LibraryRef{}, Side::Source);
  const ApiIndex target = build_api_index(paths.target_catalog, LibraryRef{}, Side::Target);

  auto& out = console(options);
  if (exp.runs == 1) spdlog::warn("runs=1: results are low-confidence");
  const auto result = run_experiment(exp, pool, source, target,
                              [](const std::string& msg) { spdlog::info("{}", msg); });

  ReportHeader header = header_for(options, cfg, "eval");
  header.add("seed", std::to_string(exp.seed));
  header.add("runs", std::to_string(exp.runs));
  header.add("truth_hash", fingerprint(read_file(paths.truth)));
  header.add("fc_threshold", std::to_string(exp.fc.threshold));
  header.add("fc_max_cardinality", std::to_string(exp.fc.max_cardinality));
  header.add("fs_threshold", format_double(exp.fs_threshold, 4));
  header.add("ld_floor", format_double(exp.ld_floor, 4));
  if (exp.runs == 1) header.add("low_confidence", "true");
  const std::string head = header.comment_lines();

  std::string csv = head + "setting,max_methods,fragment_count,approach,mean_fmeasure,stddev\n";
  nlohmann::ordered_json json;
  nlohmann::ordered_json meta;
  meta["tool_version"] = std::string(tool_version());
  meta["config_hash"] = header.config_hash;
  for (const auto& [k, v] : header.fields) meta[k] = v;
  json["meta"] = meta;
  json["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : result.rows) {
    csv += std::string(to_string(r.setting)) + ',' + std::to_string(r.max_methods) + ',' +
           std::to_string(r.fragment_count) + ',' + r.approach + ',' +
           format_double(r.mean_fmeasure) + ',' + format_double(r.stddev) + '\n';
    json["rows"].push_back({{"setting", std::string(to_string(r.setting))},
                            {"max_methods", r.max_methods},
                            {"fragment_count", r.fragment_count},
                            {"approach", r.approach},
                            {"mean_fmeasure", r.mean_fmeasure},
                            {"stddev", r.stddev},
                            {"mean_tpr", r.mean_tpr},
                            {"mean_precision", r.mean_precision}});
  }

  // Per-approach averages over all cells of a setting.
  struct Acc {
    double tpr = 0, f = 0;
    std::size_t n = 0;
  };
  std::map<std::pair<std::string, std::string>, Acc> acc;
  for (const auto& r : result.rows) {
    auto& a = acc[{std::string(to_string(r.setting)), r.approach}];
    a.tpr += r.mean_tpr;
    a.f += r.mean_fmeasure;
    ++a.n;
  }
  std::string summary = head + "setting,approach,mean_tpr,mean_fmeasure\n";
  for (const auto& setting : exp.settings) {
    for (const char* approach : kApproaches) {
      const auto& a = acc[{std::string(to_string(setting)), approach}];
      summary += std::string(to_string(setting)) + ',' + approach + ',' +
                 format_double(a.n ? a.tpr / a.n : 0.0) + ',' +
                 format_double(a.n ? a.f / a.n : 0.0) + '\n';
    }
  }

  std::string ld = head + "max_methods,fragment_count,sa,fc,mc\n";
  for (const auto& u : result.ld_usage) {
    ld += std::to_string(u.max_methods) + ',' + std::to_string(u.fragment_count) + ',' +
          std::to_string(u.sa) + ',' + std::to_string(u.fc) + ',' + std::to_string(u.mc) + '\n';
  }

  const fs::path dir = out_of(options, cfg);
  write_file_atomic(dir / "curves.csv", csv);
  write_file_atomic(dir / "curves.json", json.dump(2) + "\n");
  write_file_atomic(dir / "summary.csv", summary);
  write_file_atomic(dir / "ld_usage.csv", ld);

  out << "cells: " << result.rows.size() / 4 << " x " << exp.runs << " runs\n";
  out << "setting approach  mean_tpr  mean_fmeasure\n";
  for (const auto& setting : exp.settings) {
    for (const char* approach : kApproaches) {
      const auto& a = acc[{std::string(to_string(setting)), approach}];
      out << "   " << to_string(setting) << "    " << approach << "      "
          << format_double(a.n ? a.tpr / a.n : 0.0, 3) << "     "
          << format_double(a.n ? a.f / a.n : 0.0, 3) << "\n";
    }
  }
  out << "written: " << (dir / "curves.csv").string() << "\n";
  return 0;
}

}  // namespace migmap
