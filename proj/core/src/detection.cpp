#include "migmap/detection.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <spdlog/spdlog.h>

#include "migmap/call_extractor.hpp"
#include "migmap/errors.hpp"
#include "migmap/git_repository.hpp"
#include "migmap/unified_diff.hpp"

namespace migmap {
namespace {

bool is_java(std::string_view path) { return path.ends_with(".java"); }

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

// Position of every commit in topological order, and of each first-parent
// commit on the chain.
struct HistoryOrder {
  std::map<std::string, std::size_t> topo;
  std::vector<std::size_t> chain_topo;

  explicit HistoryOrder(const ProjectIndex& index) {
    for (std::size_t i = 0; i < index.commits.size(); ++i) topo[index.commits[i].id] = i;
    for (const auto& id : index.first_parent_chain) chain_topo.push_back(topo.at(id));
  }

  // First chain position whose commit is at or after `commit` in topological
  // order; commits on side branches map to the merge that brings them in.
  std::optional<std::size_t> chain_position(const std::string& commit) const {
    auto it = topo.find(commit);
    if (it == topo.end()) return std::nullopt;
    auto pos = std::lower_bound(chain_topo.begin(), chain_topo.end(), it->second);
    if (pos == chain_topo.end()) return std::nullopt;
    return static_cast<std::size_t>(pos - chain_topo.begin());
  }
};

// Tracks which Java files reference the source library as the chain advances.
class ReferenceTracker {
 public:
  ReferenceTracker(const GitRepository& repo, const std::vector<std::string>& prefixes)
      : repo_(repo), prefixes_(prefixes) {}

  void reset(const std::string& commit) {
    referencing_.clear();
    std::vector<std::string> java;
    for (auto& f : repo_.list_files(commit)) {
      if (is_java(f)) java.push_back(std::move(f));
    }
    for (const auto& [path, content] : repo_.read_files(commit, java)) {
      if (references_library(content, prefixes_)) referencing_.insert(path);
    }
  }

  void advance(const CommitRecord& commit) {
    std::vector<std::string> reread;
    for (const auto& f : commit.changed_files) {
      if (!f.old_path.empty() && f.kind == ChangeKind::Renamed) referencing_.erase(f.old_path);
      if (!is_java(f.path)) continue;
      referencing_.erase(f.path);
      if (f.kind != ChangeKind::Deleted) reread.push_back(f.path);
    }
    for (const auto& [path, content] : repo_.read_files(commit.id, reread)) {
      if (references_library(content, prefixes_)) referencing_.insert(path);
    }
  }

  bool clean() const { return referencing_.empty(); }

 private:
  const GitRepository& repo_;
  const std::vector<std::string>& prefixes_;
  std::set<std::string> referencing_;
};

std::vector<Fragment> commit_fragments(const GitRepository& repo, const ProjectIndex& index,
                                       const CommitRecord& commit, const ApiIndex& source_api,
                                       const ApiIndex& target_api) {
  std::vector<Fragment> out;
  const std::string parent = commit.parents.empty() ? std::string() : commit.parents.front();
  std::vector<FileDiff> files;
  try {
    files = parse_unified_diff(repo.diff(parent, commit.id, {"*.java"}));
  } catch (const DataError& e) {
    spdlog::warn("{}: skipping diff of {}: {}", index.project, commit.id, e.what());
    return out;
  }

  std::vector<std::string> old_paths, new_paths;
  for (const auto& f : files) {
    if (f.binary || f.hunks.empty()) continue;
    if (!f.old_path.empty()) old_paths.push_back(f.old_path);
    if (!f.new_path.empty()) new_paths.push_back(f.new_path);
  }
  const auto old_files = parent.empty() ? std::map<std::string, std::string>{}
                                        : repo.read_files(parent, old_paths);
  const auto new_files = repo.read_files(commit.id, new_paths);

  for (const auto& f : files) {
    if (f.binary || f.hunks.empty()) continue;
    std::vector<std::string> old_imports, new_imports;
    if (auto it = old_files.find(f.old_path); it != old_files.end()) {
      old_imports = extract_imports(it->second);
    }
    if (auto it = new_files.find(f.new_path); it != new_files.end()) {
      new_imports = extract_imports(it->second);
    }
    for (std::size_t h = 0; h < f.hunks.size(); ++h) {
      const auto& hunk = f.hunks[h];
      MethodSet removed = extract_calls(join_lines(hunk.lines_of('-')), old_imports, source_api);
      if (removed.empty()) continue;
      MethodSet added = extract_calls(join_lines(hunk.lines_of('+')), new_imports, target_api);
      if (added.empty()) continue;
      Fragment frag;
      frag.removed = std::move(removed);
      frag.added = std::move(added);
      frag.provenance.push_back({index.project, commit.id, f.path(), static_cast<std::int64_t>(h)});
      out.push_back(std::move(frag));
    }
  }
  return out;
}

std::string version_at(std::span<const DependencyChange> changes, const LibraryRef& lib,
                       const HistoryOrder& order, std::size_t end_topo) {
  std::string version;
  for (const auto& c : changes) {
    if (!c.library.same_library(lib)) continue;
    auto it = order.topo.find(c.commit_id);
    if (it == order.topo.end() || it->second > end_topo) continue;
    version = c.action == DependencyAction::Removed ? c.previous_version : c.library.version;
  }
  return version;
}

}  // namespace

MigrationRule::MigrationRule(LibraryRef src, LibraryRef dst)
    : source(std::move(src)), target(std::move(dst)) {
  if (source.same_library(target)) {
    throw ConfigError("migration rule source and target must differ: " + source.key());
  }
}

std::vector<Segment> detect_segments(const ProjectIndex& index,
                                     std::span<const DependencyChange> changes,
                                     const MigrationRule& rule, const ApiIndex& source_api,
                                     const ApiIndex& target_api) {
  std::vector<Segment> out;
  const bool source_seen = std::any_of(changes.begin(), changes.end(), [&](const auto& c) {
    return c.library.same_library(rule.source);
  });
  const bool target_seen = std::any_of(changes.begin(), changes.end(), [&](const auto& c) {
    return c.library.same_library(rule.target);
  });
  if (!source_seen || !target_seen || index.first_parent_chain.empty()) return out;

  const HistoryOrder order(index);
  std::set<std::size_t> arrivals;
  for (const auto& c : changes) {
    if (c.action != DependencyAction::Added || !c.library.same_library(rule.target)) continue;
    if (auto pos = order.chain_position(c.commit_id)) arrivals.insert(*pos);
  }
  if (arrivals.empty()) return out;

  GitRepository repo(index.repo_path);
  ReferenceTracker tracker(repo, rule.source.package_prefixes);
  std::map<std::size_t, bool> has_fragment;
  auto commit_at = [&](std::size_t pos) -> const CommitRecord& {
    return index.commits[order.chain_topo[pos]];
  };

  std::optional<std::size_t> last_end;
  for (std::size_t arrival : arrivals) {
    if (last_end && arrival <= *last_end) continue;
    tracker.reset(commit_at(arrival).id);
    std::optional<std::size_t> end;
    for (std::size_t p = arrival; p < index.first_parent_chain.size(); ++p) {
      if (p > arrival) tracker.advance(commit_at(p));
      if (tracker.clean()) {
        end = p;
        break;
      }
    }
    if (!end) {
      spdlog::info("{}: {} still referenced at HEAD; no segment closed after {}", index.project,
                   rule.source.key(), commit_at(arrival).id);
      continue;
    }
    last_end = end;

    std::optional<std::size_t> start;
    for (std::size_t p = *end + 1; p-- > arrival;) {
      auto [it, fresh] = has_fragment.try_emplace(p, false);
      if (fresh) {
        it->second =
            !commit_fragments(repo, index, commit_at(p), source_api, target_api).empty();
      }
      if (it->second) start = p;
    }
    if (!start) {
      spdlog::info("{}: segment ending at {} has no replacement fragment; dropped", index.project,
                   commit_at(*end).id);
      continue;
    }
    Segment seg;
    seg.project = index.project;
    seg.start_commit = commit_at(*start).id;
    seg.end_commit = commit_at(*end).id;
    const std::size_t end_topo = order.chain_topo[*end];
    seg.source_version = version_at(changes, rule.source, order, end_topo);
    seg.target_version = version_at(changes, rule.target, order, end_topo);
    out.push_back(std::move(seg));
  }
  return out;
}

std::vector<Fragment> extract_fragments(const ProjectIndex& index, const Segment& segment,
                                        const ApiIndex& source_api, const ApiIndex& target_api) {
  const auto& chain = index.first_parent_chain;
  auto start = std::find(chain.begin(), chain.end(), segment.start_commit);
  auto end = std::find(chain.begin(), chain.end(), segment.end_commit);
  if (start == chain.end() || end == chain.end() || end < start) {
    throw DataError("segment " + segment.start_commit + ".." + segment.end_commit +
                    " is not on the first-parent chain of " + index.project);
  }
  GitRepository repo(index.repo_path);
  std::vector<Fragment> out;
  for (auto it = start; it <= end; ++it) {
    const CommitRecord* commit = index.find(*it);
    if (!commit) throw DataError("commit " + *it + " missing from index of " + index.project);
    auto frags = commit_fragments(repo, index, *commit, source_api, target_api);
    std::move(frags.begin(), frags.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<Fragment> extract_commit_fragments(const ProjectIndex& index,
                                               const std::string& commit,
                                               const ApiIndex& source_api,
                                               const ApiIndex& target_api) {
  const CommitRecord* record = index.find(commit);
  if (!record) throw DataError("commit " + commit + " missing from index of " + index.project);
  GitRepository repo(index.repo_path);
  return commit_fragments(repo, index, *record, source_api, target_api);
}

}  // namespace migmap
