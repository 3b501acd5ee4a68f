#include "migmap/git_repository.hpp"

#include <sstream>

#include "migmap/errors.hpp"
#include "migmap/process.hpp"

namespace migmap {

GitRepository::GitRepository(std::filesystem::path path) : path_(std::move(path)) {
  std::error_code ec;
  if (!std::filesystem::is_directory(path_, ec)) {
    throw RepositoryError("not a repository: " + path_.string() + " (no such directory)");
  }
  auto r = run_process({"git", "-C", path_.string(), "rev-parse", "--git-dir"});
  if (r.exit_code != 0) {
    throw RepositoryError("not a repository: " + path_.string());
  }
}

std::string GitRepository::git(const std::vector<std::string>& args,
                               const std::string& input) const {
  std::vector<std::string> argv{"git", "-c", "core.quotepath=off", "-C", path_.string()};
  argv.insert(argv.end(), args.begin(), args.end());
  auto r = run_process(argv, input);
  if (r.exit_code != 0) {
    std::string cmd;
    for (const auto& a : args) cmd += " " + a;
    throw RepositoryError("git" + cmd + " failed in " + path_.string() + ": " + r.err);
  }
  return std::move(r.out);
}

bool GitRepository::has_commits() const {
  auto r = run_process({"git", "-C", path_.string(), "rev-parse", "--verify", "-q", "HEAD"});
  return r.exit_code == 0;
}

std::vector<std::string> GitRepository::first_parent_chain() const {
  std::vector<std::string> out;
  if (!has_commits()) return out;
  std::istringstream in(git({"rev-list", "--first-parent", "--reverse", "HEAD"}));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> GitRepository::list_files(const std::string& commit) const {
  std::vector<std::string> out;
  const std::string raw = git({"ls-tree", "-r", "-z", "--name-only", commit});
  std::size_t start = 0;
  while (start < raw.size()) {
    auto end = raw.find('\0', start);
    if (end == std::string::npos) end = raw.size();
    if (end > start) out.push_back(raw.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::optional<std::string> GitRepository::read_file(const std::string& commit,
                                                    const std::string& file) const {
  auto files = read_files(commit, {file});
  auto it = files.find(file);
  if (it == files.end()) return std::nullopt;
  return std::move(it->second);
}

std::map<std::string, std::string> GitRepository::read_files(
    const std::string& commit, const std::vector<std::string>& files) const {
  std::map<std::string, std::string> out;
  if (files.empty()) return out;
  std::string request;
  for (const auto& f : files) request += commit + ":" + f + "\n";
  const std::string raw = git({"cat-file", "--batch"}, request);

  std::size_t pos = 0;
  for (const auto& f : files) {
    auto eol = raw.find('\n', pos);
    if (eol == std::string::npos) {
      throw RepositoryError("truncated cat-file output in " + path_.string());
    }
    std::string header = raw.substr(pos, eol - pos);
    pos = eol + 1;
    if (header.size() >= 8 && header.compare(header.size() - 8, 8, " missing") == 0) continue;
    // "<oid> <type> <size>"
    auto last_space = header.rfind(' ');
    auto type_space = header.find(' ');
    if (last_space == std::string::npos || type_space == last_space) {
      throw RepositoryError("unexpected cat-file header '" + header + "' in " + path_.string());
    }
    const std::string type = header.substr(type_space + 1, last_space - type_space - 1);
    const std::size_t size = std::stoull(header.substr(last_space + 1));
    if (pos + size > raw.size()) {
      throw RepositoryError("unreadable object store in " + path_.string());
    }
    if (type == "blob") out.emplace(f, raw.substr(pos, size));
    pos += size + 1;  // contents are followed by a newline
  }
  return out;
}

std::string GitRepository::diff(const std::string& parent, const std::string& commit,
                                 const std::vector<std::string>& pathspecs) const {
  std::vector<std::string> args{"diff",        "--no-color", "--no-ext-diff", "-U3",
                                "-M",          "--src-prefix=a/", "--dst-prefix=b/",
                                parent.empty() ? std::string(kEmptyTree) : parent, commit};
  if (!pathspecs.empty()) {
    args.push_back("--");
    args.insert(args.end(), pathspecs.begin(), pathspecs.end());
  }
  return git(args);
}

}  // namespace migmap
