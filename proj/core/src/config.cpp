#include "migmap/config.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <CLI11.hpp>

#include "migmap/errors.hpp"
#include "migmap/report.hpp"

namespace migmap {
namespace {

struct Item {
  std::string section;  // dotted parents
  std::string name;
  std::vector<std::string> values;
};

std::string where(const std::string& source, const Item& item) {
  return source + ": " + (item.section.empty() ? "" : item.section + ".") + item.name;
}

const std::string& single(const std::string& source, const Item& item) {
  if (item.values.size() != 1) throw ConfigError(where(source, item) + " expects one value");
  return item.values.front();
}

double to_double(const std::string& source, const Item& item) {
  const auto& v = single(source, item);
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError(where(source, item) + ": '" + v + "' is not a number");
}

std::uint64_t to_uint(const std::string& source, const std::string& v, const Item& item) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ConfigError(where(source, item) + ": '" + v + "' is not a non-negative integer");
  }
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw ConfigError(where(source, item) + ": '" + v + "' is out of range");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

void require_exists(const std::filesystem::path& p, const std::string& what) {
  if (!std::filesystem::exists(p)) throw ConfigError(what + " not found: " + p.string());
}

std::vector<std::string> version_parts(const std::string& v) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : v) {
    if (c == '.' || c == '-' || c == '_') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

bool numeric(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

bool version_less(const std::string& a, const std::string& b) {
  const auto pa = version_parts(a);
  const auto pb = version_parts(b);
  for (std::size_t i = 0; i < std::min(pa.size(), pb.size()); ++i) {
    if (pa[i] == pb[i]) continue;
    if (numeric(pa[i]) && numeric(pb[i])) {
      const auto x = pa[i].find_first_not_of('0');
      const auto y = pb[i].find_first_not_of('0');
      const std::string sx = x == std::string::npos ? "" : pa[i].substr(x);
      const std::string sy = y == std::string::npos ? "" : pb[i].substr(y);
      if (sx.size() != sy.size()) return sx.size() < sy.size();
      return sx < sy;
    }
    return pa[i] < pb[i];
  }
  return pa.size() < pb.size();
}

CatalogChoice select_catalog(const LibraryConfig& lib, const std::string& version) {
  if (auto it = lib.versions.find(version); it != lib.versions.end()) {
    return {it->second, version, false};
  }
  if (!lib.versions.empty()) {
    auto newest = lib.versions.begin();
    for (auto it = lib.versions.begin(); it != lib.versions.end(); ++it) {
      if (version_less(newest->first, it->first)) newest = it;
    }
    return {newest->second, newest->first, true};
  }
  return {lib.catalog, "", !version.empty()};
}

const LibraryConfig& RunConfig::library(const std::string& name) const {
  if (auto it = libraries.find(name); it != libraries.end()) return it->second;
  for (const auto& [_, lib] : libraries) {
    if (lib.library.key() == name) return lib;
  }
  throw ConfigError("unknown library '" + name + "'");
}

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir,
                           const std::string& source_name) {
  std::istringstream in(text);
  std::vector<CLI::ConfigItem> raw;
  try {
    raw = CLI::ConfigTOML().from_config(in);
  } catch (const CLI::Error& e) {
    throw ConfigError(source_name + ": " + e.what());
  }

  RunConfig cfg;
  cfg.hash = fingerprint(text);
  cfg.workdir = resolve(base_dir, "work");
  cfg.out = resolve(base_dir, "out");
  bool have_experiment = false;
  std::string truth, src_cat, tgt_cat;

  for (const auto& r : raw) {
    if (r.name == "++" || r.name == "--") continue;
    Item item;
    for (const auto& p : r.parents) item.section += (item.section.empty() ? "" : ".") + p;
    item.name = r.name;
    item.values = r.inputs;
    const auto& s = item.section;

    if (s.empty()) {
      if (item.name == "workdir") {
        cfg.workdir = resolve(base_dir, single(source_name, item));
      } else if (item.name == "out") {
        cfg.out = resolve(base_dir, single(source_name, item));
      } else if (item.name == "corpus") {
        cfg.corpus = resolve(base_dir, single(source_name, item));
        require_exists(cfg.corpus, "corpus manifest");
      } else if (item.name == "seed") {
        cfg.seed = to_uint(source_name, single(source_name, item), item);
      } else {
        throw ConfigError(where(source_name, item) + ": unknown key");
      }
    } else if (s == "thresholds") {
      if (item.name == "fc") {
        cfg.fc.threshold = to_uint(source_name, single(source_name, item), item);
      } else if (item.name == "fc_max_cardinality") {
        cfg.fc.max_cardinality = to_uint(source_name, single(source_name, item), item);
      } else if (item.name == "fs") {
        cfg.fs_threshold = to_double(source_name, item);
      } else if (item.name == "ld_floor") {
        cfg.ld_floor = to_double(source_name, item);
      } else {
        throw ConfigError(where(source_name, item) + ": unknown key");
      }
    } else if (s.rfind("library.", 0) == 0) {
      const std::string alias = s.substr(8);
      auto& lib = cfg.libraries[alias];
      lib.alias = alias;
      if (item.name == "coordinates") {
        auto parsed = LibraryRef::parse_coordinates(single(source_name, item));
        parsed.package_prefixes = lib.library.package_prefixes;
        lib.library = std::move(parsed);
      } else if (item.name == "packages") {
        lib.library.package_prefixes = item.values;
      } else if (item.name == "catalog") {
        lib.catalog = resolve(base_dir, single(source_name, item));
        require_exists(lib.catalog, "catalog for " + alias);
      } else if (item.name == "catalogs") {
        for (const auto& v : item.values) {
          const auto eq = v.find('=');
          if (eq == std::string::npos || eq == 0) {
            throw ConfigError(where(source_name, item) + ": expected \"version=path\"");
          }
          auto path = resolve(base_dir, v.substr(eq + 1));
          require_exists(path, "catalog for " + alias);
          lib.versions[v.substr(0, eq)] = path;
        }
      } else {
        throw ConfigError(where(source_name, item) + ": unknown key");
      }
    } else if (s == "experiment") {
      have_experiment = true;
      auto& e = cfg.experiment;
      if (item.name == "truth") {
        truth = single(source_name, item);
      } else if (item.name == "source_catalog") {
        src_cat = single(source_name, item);
      } else if (item.name == "target_catalog") {
        tgt_cat = single(source_name, item);
      } else if (item.name == "settings") {
        e.settings.clear();
        for (const auto& v : item.values) e.settings.push_back(parse_setting(v));
      } else if (item.name == "sizes") {
        e.sizes.clear();
        for (const auto& v : item.values) e.sizes.push_back(to_uint(source_name, v, item));
      } else if (item.name == "counts") {
        e.counts.clear();
        for (const auto& v : item.values) e.counts.push_back(to_uint(source_name, v, item));
      } else if (item.name == "runs") {
        e.runs = to_uint(source_name, single(source_name, item), item);
      } else if (item.name == "seed") {
        e.seed = to_uint(source_name, single(source_name, item), item);
      } else {
        throw ConfigError(where(source_name, item) + ": unknown key");
      }
    } else {
      throw ConfigError(source_name + ": unknown section [" + s + "]");
    }
  }

  for (const auto& [alias, lib] : cfg.libraries) {
    if (lib.library.group_id.empty()) {
      throw ConfigError(source_name + ": library." + alias + " needs coordinates");
    }
    if (lib.catalog.empty() && lib.versions.empty()) {
      throw ConfigError(source_name + ": library." + alias + " needs a catalog");
    }
  }

  cfg.experiment.fc = cfg.fc;
  cfg.experiment.fs_threshold = cfg.fs_threshold;
  cfg.experiment.ld_floor = cfg.ld_floor;
  if (have_experiment) {
    if (truth.empty() || src_cat.empty() || tgt_cat.empty()) {
      throw ConfigError(source_name +
                        ": [experiment] needs truth, source_catalog and target_catalog");
    }
    ExperimentPaths paths{resolve(base_dir, truth), resolve(base_dir, src_cat),
                          resolve(base_dir, tgt_cat)};
    require_exists(paths.truth, "truth pool");
    require_exists(paths.source_catalog, "source catalog");
    require_exists(paths.target_catalog, "target catalog");
    cfg.experiment_paths = paths;
    cfg.experiment.validate();
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw ConfigError("configuration file not found: " + path.string());
  }
  auto cfg = parse_run_config(read_file(path), path.parent_path().empty()
                                                   ? std::filesystem::current_path()
                                                   : std::filesystem::absolute(path).parent_path(),
                              path.string());
  cfg.file = path;
  return cfg;
}

}  // namespace migmap
