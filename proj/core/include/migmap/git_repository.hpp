#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace migmap {

/// Thin read-only view over a git repository, driven through the `git` CLI.
class GitRepository {
 public:
  /// Throws RepositoryError when `path` is not a git repository.
  explicit GitRepository(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }
  bool has_commits() const;

  /// Runs `git <args>` in the repository; throws RepositoryError on failure.
  std::string git(const std::vector<std::string>& args, const std::string& input = {}) const;

  /// Commits from the root to HEAD following first parents.
  std::vector<std::string> first_parent_chain() const;

  /// All files tracked at `commit`.
  std::vector<std::string> list_files(const std::string& commit) const;

  /// File contents at `commit`, or nullopt when the path does not exist there.
  std::optional<std::string> read_file(const std::string& commit, const std::string& file) const;

  /// Batch read of several paths at one commit; missing paths are omitted.
  std::map<std::string, std::string> read_files(const std::string& commit,
                                                const std::vector<std::string>& files) const;

  /// Unified diff (3 context lines, rename detection) from `parent` to
  /// `commit`; an empty parent diffs against the empty tree.
  std::string diff(const std::string& parent, const std::string& commit,
                   const std::vector<std::string>& pathspecs = {}) const;

  static constexpr const char* kEmptyTree = "4b825dc642cb6eb9a060e54bf8d69288fbee4904";

 private:
  std::filesystem::path path_;
};

}  // namespace migmap
