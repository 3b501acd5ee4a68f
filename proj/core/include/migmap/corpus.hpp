#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "migmap/api_index.hpp"

namespace migmap {

enum class ChangeKind { Added, Modified, Deleted, Renamed, Copied, TypeChanged };

std::string_view to_string(ChangeKind kind);

struct ChangedFile {
  std::string path;
  ChangeKind kind = ChangeKind::Modified;
  std::string old_path;  // set for renames and copies

  friend bool operator==(const ChangedFile&, const ChangedFile&) = default;
};

struct CommitRecord {
  std::string id;
  std::vector<std::string> parents;
  std::int64_t timestamp = 0;  // seconds since the epoch, UTC
  std::string author;
  std::string message;
  std::vector<ChangedFile> changed_files;  // relative to the first parent

  friend bool operator==(const CommitRecord&, const CommitRecord&) = default;
};

/// A dependency manifest as it looked before and after one commit touched it.
struct ManifestSnapshot {
  std::string commit;
  std::string path;
  std::optional<std::string> before;
  std::optional<std::string> after;
};

/// Everything the miner keeps about one project history.
struct ProjectIndex {
  std::string project;
  std::filesystem::path repo_path;
  std::vector<CommitRecord> commits;             // topological order, parents first
  std::vector<std::string> first_parent_chain;  // root .. HEAD
  std::vector<ManifestSnapshot> manifests;
  std::vector<std::string> timestamp_violations;  // commits older than their first parent

  const CommitRecord* find(const std::string& commit_id) const;
};

enum class DependencyAction { Added, Removed, VersionChanged };

std::string_view to_string(DependencyAction action);

struct DependencyChange {
  std::string commit_id;
  LibraryRef library;
  DependencyAction action = DependencyAction::Added;
  std::string previous_version;  // for removals and version changes
};

/// Walks the history reachable from HEAD. Throws RepositoryError when the
/// path is not a repository or the object store cannot be read.
ProjectIndex scan_repository(const std::filesystem::path& repo, std::string project_name = {});

/// Default project name for a repository path: its directory name without a
/// trailing ".git".
std::string project_name_for(const std::filesystem::path& repo);

/// One DependencyChange per (commit, library) whose declared coordinates
/// differ from the first parent's manifest. Malformed manifests are skipped
/// with a warning.
std::vector<DependencyChange> extract_dependency_changes(const ProjectIndex& index);

/// Persists the index under `<workdir>/index/<project>/`, replacing any
/// previous one. Output bytes depend only on the index contents.
void write_index(const ProjectIndex& index, const std::vector<DependencyChange>& changes,
                 const std::filesystem::path& workdir);

/// Throws DataError when the index is missing or corrupted.
ProjectIndex load_index(const std::filesystem::path& workdir, const std::string& project);
std::vector<DependencyChange> load_dependency_changes(const std::filesystem::path& workdir,
                                                      const std::string& project);
std::vector<std::string> list_indexed_projects(const std::filesystem::path& workdir);

std::string format_utc(std::int64_t epoch_seconds);

}  // namespace migmap
