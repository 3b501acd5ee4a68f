#include "test_support.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <sys/wait.h>

#include "migmap/random.hpp"

namespace migmap::test {

namespace fs = std::filesystem;

fs::path data_path(const std::string& relative) { return fs::path(MIGMAP_DATA_DIR) / relative; }

fs::path fixture_script(const std::string& name) {
  return fs::path(MIGMAP_FIXTURE_DIR) / ("make_" + name + "_repo.sh");
}

TempDir::TempDir() {
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = fs::temp_directory_path() / ("migmap-test-" + std::to_string(rd()));
    if (fs::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

ShellResult shell(const std::string& command) {
  ShellResult r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + command);
  std::array<char, 4096> buf;
  while (auto n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void build_fixture_repo(const std::string& name, const fs::path& dir) {
  const auto r = shell("bash '" + fixture_script(name).string() + "' '" + dir.string() + "' 2>&1");
  if (r.status != 0) throw std::runtime_error("fixture " + name + " failed: " + r.out);
}

LibraryRef json_library() { return {"org.json", "json", "", {"org.json"}}; }
LibraryRef gson_library() { return {"com.google.code.gson", "gson", "", {"com.google.gson"}}; }

ApiIndex json_api() {
  return build_api_index(data_path("catalogs/json.catalog"), json_library(), Side::Source);
}
ApiIndex gson_api() {
  return build_api_index(data_path("catalogs/gson.catalog"), gson_library(), Side::Target);
}

std::vector<Fragment> walkthrough_fragments() {
  std::ifstream in(data_path("fixtures/walkthrough_fragments.jsonl"));
  return read_fragments(in);
}

MethodSet src(std::vector<std::string> encodings) {
  MethodSet s;
  for (const auto& e : encodings) s.insert(MethodRef::parse(e, Side::Source));
  return s;
}

MethodSet tgt(std::vector<std::string> encodings) {
  MethodSet s;
  for (const auto& e : encodings) s.insert(MethodRef::parse(e, Side::Target));
  return s;
}

Fragment frag(std::vector<std::string> removed, std::vector<std::string> added,
              std::uint64_t frequency) {
  Fragment f;
  f.removed = src(std::move(removed));
  f.added = tgt(std::move(added));
  f.frequency = frequency;
  return f;
}

std::string commit_by_subject(const fs::path& repo, const std::string& prefix) {
  const auto r = shell("git -C '" + repo.string() + "' log --format='%H %s'");
  std::size_t pos = 0;
  while (pos < r.out.size()) {
    auto eol = r.out.find('\n', pos);
    if (eol == std::string::npos) eol = r.out.size();
    const std::string line = r.out.substr(pos, eol - pos);
    const auto space = line.find(' ');
    if (space != std::string::npos && line.compare(space + 1, prefix.size(), prefix) == 0) {
      return line.substr(0, space);
    }
    pos = eol + 1;
  }
  throw std::runtime_error("no commit with subject " + prefix);
}

std::optional<double> TableSimilarity::score(const MethodRef& removed,
                                             const MethodRef& added) const {
  auto it = table_.find(removed.encoding() + "|" + added.encoding());
  if (it != table_.end()) return it->second;
  return fallback_;
}

std::optional<double> HashSimilarity::score(const MethodRef& removed, const MethodRef& added) const {
  std::uint64_t h = salt_;
  for (char c : removed.encoding() + "|" + added.encoding()) {
    h = splitmix64(h ^ static_cast<unsigned char>(c));
  }
  // quantized so ties happen
  return static_cast<double>(h % 8) / 8.0;
}

}  // namespace migmap::test
