#include "migmap/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "migmap/errors.hpp"
#include "migmap/git_repository.hpp"
#include "migmap/pom.hpp"
#include "migmap/report.hpp"

namespace migmap {
namespace fs = std::filesystem;
namespace {

using ojson = nlohmann::ordered_json;

// Undoes git's C-style quoting of unusual path names.
std::string unquote_path(std::string_view s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::string(s);
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    char c = s[i];
    if (c != '\\' || i + 2 >= s.size()) {
      out += c;
      continue;
    }
    char n = s[++i];
    switch (n) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      default:
        if (n >= '0' && n <= '7' && i + 2 < s.size()) {
          out += static_cast<char>(std::stoi(std::string(s.substr(i, 3)), nullptr, 8));
          i += 2;
        } else {
          out += n;
        }
    }
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

ChangedFile parse_name_status(const std::string& line) {
  auto cols = split(line, '\t');
  if (cols.size() < 2 || cols[0].empty()) {
    throw RepositoryError("unexpected name-status line '" + line + "'");
  }
  ChangedFile f;
  switch (cols[0][0]) {
    case 'A': f.kind = ChangeKind::Added; break;
    case 'D': f.kind = ChangeKind::Deleted; break;
    case 'R': f.kind = ChangeKind::Renamed; break;
    case 'C': f.kind = ChangeKind::Copied; break;
    case 'T': f.kind = ChangeKind::TypeChanged; break;
    default: f.kind = ChangeKind::Modified; break;
  }
  if ((f.kind == ChangeKind::Renamed || f.kind == ChangeKind::Copied) && cols.size() >= 3) {
    f.old_path = unquote_path(cols[1]);
    f.path = unquote_path(cols[2]);
  } else {
    f.path = unquote_path(cols[1]);
  }
  return f;
}

ChangeKind change_kind_from(std::string_view s) {
  for (auto k : {ChangeKind::Added, ChangeKind::Modified, ChangeKind::Deleted, ChangeKind::Renamed,
                 ChangeKind::Copied, ChangeKind::TypeChanged}) {
    if (to_string(k) == s) return k;
  }
  throw DataError("corrupted index: unknown change kind '" + std::string(s) + "'");
}

DependencyAction action_from(std::string_view s) {
  for (auto a : {DependencyAction::Added, DependencyAction::Removed,
                 DependencyAction::VersionChanged}) {
    if (to_string(a) == s) return a;
  }
  throw DataError("corrupted index: unknown dependency action '" + std::string(s) + "'");
}

fs::path project_dir(const fs::path& workdir, const std::string& project) {
  return workdir / "index" / project;
}

std::vector<nlohmann::json> read_jsonl(const fs::path& path) {
  std::vector<nlohmann::json> out;
  std::ifstream in(path);
  if (!in) throw DataError("corrupted index: missing " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("corrupted index: " + path.string() + ":" + std::to_string(lineno) + ": " +
                      e.what());
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(ChangeKind kind) {
  switch (kind) {
    case ChangeKind::Added: return "added";
    case ChangeKind::Modified: return "modified";
    case ChangeKind::Deleted: return "deleted";
    case ChangeKind::Renamed: return "renamed";
    case ChangeKind::Copied: return "copied";
    case ChangeKind::TypeChanged: return "type-changed";
  }
  return "modified";
}

std::string_view to_string(DependencyAction action) {
  switch (action) {
    case DependencyAction::Added: return "added";
    case DependencyAction::Removed: return "removed";
    case DependencyAction::VersionChanged: return "version-changed";
  }
  return "added";
}

const CommitRecord* ProjectIndex::find(const std::string& commit_id) const {
  auto it = std::find_if(commits.begin(), commits.end(),
                         [&](const CommitRecord& c) { return c.id == commit_id; });
  return it == commits.end() ? nullptr : &*it;
}

std::string format_utc(std::int64_t epoch_seconds) {
  std::time_t t = static_cast<std::time_t>(epoch_seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string project_name_for(const fs::path& repo) {
  fs::path p = repo;
  if (!p.has_filename()) p = p.parent_path();  // trailing slash
  std::string name = p.filename().string();
  if (name.size() > 4 && name.ends_with(".git")) name.resize(name.size() - 4);
  if (name.empty() || name == "." || name == "..") {
    name = fs::weakly_canonical(repo).filename().string();
  }
  return name;
}

ProjectIndex scan_repository(const fs::path& repo_path, std::string project_name) {
  GitRepository repo(repo_path);
  ProjectIndex index;
  index.project = project_name.empty() ? project_name_for(repo_path) : std::move(project_name);
  index.repo_path = fs::absolute(repo_path).lexically_normal();
  if (!repo.has_commits()) return index;

  // \x1e starts a commit, \x1f separates header fields, \x1d ends the message.
  const std::string raw = repo.git({"log", "--topo-order", "--reverse",
                                    "--diff-merges=first-parent", "--name-status", "-M",
                                    "--no-color", "--format=%x1e%H%x1f%P%x1f%ct%x1f%an%x1f%B%x1d",
                                    "HEAD"});
  for (const auto& chunk : split(raw, '\x1e')) {
    if (chunk.empty()) continue;
    auto end_msg = chunk.find('\x1d');
    if (end_msg == std::string::npos) throw RepositoryError("unreadable log output");
    auto fields = split(std::string_view(chunk).substr(0, end_msg), '\x1f');
    if (fields.size() != 5) throw RepositoryError("unreadable log output");
    CommitRecord c;
    c.id = fields[0];
    if (!fields[1].empty()) c.parents = split(fields[1], ' ');
    c.timestamp = std::stoll(fields[2]);
    c.author = fields[3];
    c.message = fields[4];
    while (!c.message.empty() && c.message.back() == '\n') c.message.pop_back();
    std::istringstream rest(chunk.substr(end_msg + 1));
    std::string line;
    while (std::getline(rest, line)) {
      if (!line.empty()) c.changed_files.push_back(parse_name_status(line));
    }
    index.commits.push_back(std::move(c));
  }
  index.first_parent_chain = repo.first_parent_chain();

  std::map<std::string, const CommitRecord*> by_id;
  for (const auto& c : index.commits) by_id[c.id] = &c;
  for (const auto& id : index.first_parent_chain) {
    const CommitRecord* c = by_id.at(id);
    if (c->parents.empty()) continue;
    auto parent = by_id.find(c->parents.front());
    if (parent != by_id.end() && c->timestamp < parent->second->timestamp) {
      index.timestamp_violations.push_back(c->id);
    }
  }

  for (const auto& c : index.commits) {
    for (const auto& f : c.changed_files) {
      if (!is_manifest_path(f.path) && !is_manifest_path(f.old_path)) continue;
      ManifestSnapshot snap;
      snap.commit = c.id;
      snap.path = f.path;
      if (!c.parents.empty() && f.kind != ChangeKind::Added) {
        snap.before = repo.read_file(c.parents.front(), f.old_path.empty() ? f.path : f.old_path);
      }
      if (f.kind != ChangeKind::Deleted) snap.after = repo.read_file(c.id, f.path);
      index.manifests.push_back(std::move(snap));
    }
  }
  return index;
}

std::vector<DependencyChange> extract_dependency_changes(const ProjectIndex& index) {
  std::vector<DependencyChange> out;
  auto parse = [&](const std::optional<std::string>& text, const ManifestSnapshot& snap,
                   bool& ok) {
    std::map<std::string, LibraryRef> deps;
    if (!text) return deps;
    try {
      for (auto& lib : parse_pom_dependencies(*text)) {
        auto key = lib.key();
        deps.emplace(std::move(key), std::move(lib));
      }
    } catch (const DataError& e) {
      spdlog::warn("{}: skipping {} at {}: {}", index.project, snap.path, snap.commit, e.what());
      ok = false;
    }
    return deps;
  };

  for (const auto& commit : index.commits) {
    std::map<std::string, DependencyChange> per_library;
    for (const auto& snap : index.manifests) {
      if (snap.commit != commit.id) continue;
      bool ok = true;
      auto before = parse(snap.before, snap, ok);
      auto after = parse(snap.after, snap, ok);
      if (!ok) continue;
      for (const auto& [key, lib] : after) {
        auto prev = before.find(key);
        if (prev == before.end()) {
          per_library.try_emplace(key, DependencyChange{commit.id, lib, DependencyAction::Added, {}});
        } else if (prev->second.version != lib.version) {
          per_library.try_emplace(key, DependencyChange{commit.id, lib,
                                                        DependencyAction::VersionChanged,
                                                        prev->second.version});
        }
      }
      for (const auto& [key, lib] : before) {
        if (!after.count(key)) {
          per_library.try_emplace(key, DependencyChange{commit.id, lib, DependencyAction::Removed,
                                                        lib.version});
        }
      }
    }
    for (auto& [_, change] : per_library) out.push_back(std::move(change));
  }
  return out;
}

void write_index(const ProjectIndex& index, const std::vector<DependencyChange>& changes,
                 const fs::path& workdir) {
  const fs::path final_dir = project_dir(workdir, index.project);
  fs::path tmp_dir = final_dir;
  tmp_dir += ".tmp";
  fs::remove_all(tmp_dir);
  fs::create_directories(tmp_dir);

  ojson meta;
  meta["project"] = index.project;
  meta["repo_path"] = index.repo_path.string();
  meta["commit_count"] = index.commits.size();
  meta["first_parent_chain"] = index.first_parent_chain;
  meta["timestamp_violations"] = index.timestamp_violations;
  write_file_atomic(tmp_dir / "project.json", meta.dump(2) + "\n");

  std::string commits;
  for (const auto& c : index.commits) {
    ojson j;
    j["id"] = c.id;
    j["parents"] = c.parents;
    j["timestamp"] = c.timestamp;
    j["date"] = format_utc(c.timestamp);
    j["author"] = c.author;
    j["message"] = c.message;
    ojson files = ojson::array();
    for (const auto& f : c.changed_files) {
      ojson e = ojson::array({f.path, std::string(to_string(f.kind))});
      if (!f.old_path.empty()) e.push_back(f.old_path);
      files.push_back(std::move(e));
    }
    j["changed_files"] = std::move(files);
    commits += j.dump() + "\n";
  }
  write_file_atomic(tmp_dir / "commits.jsonl", commits);

  std::string manifests;
  for (const auto& m : index.manifests) {
    ojson j;
    j["commit"] = m.commit;
    j["path"] = m.path;
    j["before"] = m.before ? ojson(*m.before) : ojson(nullptr);
    j["after"] = m.after ? ojson(*m.after) : ojson(nullptr);
    manifests += j.dump() + "\n";
  }
  write_file_atomic(tmp_dir / "manifests.jsonl", manifests);

  std::string deps;
  for (const auto& d : changes) {
    ojson j;
    j["commit"] = d.commit_id;
    j["library"] = d.library.key();
    j["version"] = d.library.version;
    j["action"] = std::string(to_string(d.action));
    j["previous_version"] = d.previous_version;
    deps += j.dump() + "\n";
  }
  write_file_atomic(tmp_dir / "dependency_changes.jsonl", deps);

  fs::remove_all(final_dir);
  fs::rename(tmp_dir, final_dir);
}

ProjectIndex load_index(const fs::path& workdir, const std::string& project) {
  const fs::path dir = project_dir(workdir, project);
  ProjectIndex index;
  try {
    auto meta = nlohmann::json::parse(read_file(dir / "project.json"));
    index.project = meta.at("project").get<std::string>();
    index.repo_path = meta.at("repo_path").get<std::string>();
    index.first_parent_chain = meta.at("first_parent_chain").get<std::vector<std::string>>();
    index.timestamp_violations = meta.at("timestamp_violations").get<std::vector<std::string>>();
    for (const auto& j : read_jsonl(dir / "commits.jsonl")) {
      CommitRecord c;
      c.id = j.at("id").get<std::string>();
      c.parents = j.at("parents").get<std::vector<std::string>>();
      c.timestamp = j.at("timestamp").get<std::int64_t>();
      c.author = j.at("author").get<std::string>();
      c.message = j.at("message").get<std::string>();
      for (const auto& e : j.at("changed_files")) {
        ChangedFile f;
        f.path = e.at(0).get<std::string>();
        f.kind = change_kind_from(e.at(1).get<std::string>());
        if (e.size() > 2) f.old_path = e.at(2).get<std::string>();
        c.changed_files.push_back(std::move(f));
      }
      index.commits.push_back(std::move(c));
    }
    for (const auto& j : read_jsonl(dir / "manifests.jsonl")) {
      ManifestSnapshot m;
      m.commit = j.at("commit").get<std::string>();
      m.path = j.at("path").get<std::string>();
      if (!j.at("before").is_null()) m.before = j["before"].get<std::string>();
      if (!j.at("after").is_null()) m.after = j["after"].get<std::string>();
      index.manifests.push_back(std::move(m));
    }
    if (meta.at("commit_count").get<std::size_t>() != index.commits.size()) {
      throw DataError("commit count mismatch");
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError("corrupted index for " + project + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError("corrupted index for " + project + ": " + e.what());
  }
  return index;
}

std::vector<DependencyChange> load_dependency_changes(const fs::path& workdir,
                                                      const std::string& project) {
  std::vector<DependencyChange> out;
  try {
    for (const auto& j : read_jsonl(project_dir(workdir, project) / "dependency_changes.jsonl")) {
      DependencyChange d;
      d.commit_id = j.at("commit").get<std::string>();
      d.library = LibraryRef::parse_coordinates(j.at("library").get<std::string>());
      d.library.version = j.at("version").get<std::string>();
      d.action = action_from(j.at("action").get<std::string>());
      d.previous_version = j.at("previous_version").get<std::string>();
      out.push_back(std::move(d));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError("corrupted index for " + project + ": " + e.what());
  }
  return out;
}

std::vector<std::string> list_indexed_projects(const fs::path& workdir) {
  std::vector<std::string> out;
  const fs::path root = workdir / "index";
  if (!fs::is_directory(root)) return out;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    const std::string name = entry.path().filename().string();
    if (name.ends_with(".tmp")) continue;
    out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace migmap
