#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "migmap/corpus.hpp"
#include "migmap/errors.hpp"
#include "migmap/pom.hpp"
#include "test_support.hpp"

using namespace migmap;
using migmap::test::commit_by_subject;
using migmap::test::TempDir;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dir_bytes(const fs::path& dir) {
  std::string all;
  for (const char* f :
       {"project.json", "commits.jsonl", "manifests.jsonl", "dependency_changes.jsonl"}) {
    all += slurp(dir / f);
  }
  return all;
}
}  // namespace

TEST(Corpus, EmptyRepositoryHasNoCommits) {
  TempDir tmp;
  ASSERT_EQ(migmap::test::shell("git init -q '" + (tmp / "empty").string() + "'").status, 0);
  auto index = scan_repository(tmp / "empty");
  EXPECT_TRUE(index.commits.empty());
  EXPECT_TRUE(index.first_parent_chain.empty());
  EXPECT_EQ(index.project, "empty");
}

TEST(Corpus, NotARepository) {
  TempDir tmp;
  fs::create_directories(tmp / "plain");
  EXPECT_THROW(scan_repository(tmp / "plain"), RepositoryError);
  EXPECT_THROW(scan_repository(tmp / "missing"), RepositoryError);
}

TEST(Corpus, LinearHistory) {
  TempDir tmp;
  const auto repo = tmp / "lin";
  const auto lib = fs::path(MIGMAP_FIXTURE_DIR) / "lib.sh";
  const auto r = migmap::test::shell("bash -c 'source \"" + lib.string() + "\"; init_repo \"" +
                                     repo.string() +
                                     "\"; for i in 1 2 3; do echo $i > f; commit c$i; done'");
  ASSERT_EQ(r.status, 0);
  auto index = scan_repository(repo);
  ASSERT_EQ(index.commits.size(), 3u);
  EXPECT_EQ(index.first_parent_chain.size(), 3u);
  EXPECT_EQ(index.commits[0].message, "c1");
  EXPECT_TRUE(index.commits[0].parents.empty());
  EXPECT_EQ(index.commits[2].parents, std::vector<std::string>{index.commits[1].id});
  EXPECT_EQ(index.commits[0].author, "Dana Example");
  EXPECT_LT(index.commits[0].timestamp, index.commits[1].timestamp);
  EXPECT_EQ(index.commits[0].changed_files,
            (std::vector<ChangedFile>{{"f", ChangeKind::Added, ""}}));
  EXPECT_EQ(index.commits[1].changed_files,
            (std::vector<ChangedFile>{{"f", ChangeKind::Modified, ""}}));
  EXPECT_TRUE(index.timestamp_violations.empty());
}

TEST(Corpus, MergeCommitHasTwoParents) {
  TempDir tmp;
  migmap::test::build_fixture_repo("merge", tmp / "merge");
  auto index = scan_repository(tmp / "merge");
  ASSERT_EQ(index.commits.size(), 5u);
  const auto& head = index.commits.back();
  EXPECT_EQ(head.message, "merge side");
  ASSERT_EQ(head.parents.size(), 2u);
  EXPECT_EQ(head.parents[1], commit_by_subject(tmp / "merge", "s1"));
  // m1, m2, m3, merge
  EXPECT_EQ(index.first_parent_chain.size(), 4u);
  EXPECT_EQ(index.first_parent_chain.back(), head.id);
  // topological: parents first
  for (std::size_t i = 0; i < index.commits.size(); ++i) {
    for (const auto& p : index.commits[i].parents) {
      bool earlier = false;
      for (std::size_t j = 0; j < i; ++j) earlier |= index.commits[j].id == p;
      EXPECT_TRUE(earlier);
    }
  }
}

TEST(Corpus, DependencyChangesOfMigrationFixture) {
  TempDir tmp;
  const auto repo = tmp / "mig";
  migmap::test::build_fixture_repo("migration", repo);
  auto index = scan_repository(repo);
  auto changes = extract_dependency_changes(index);
  ASSERT_EQ(changes.size(), 3u);
  EXPECT_EQ(changes[0].commit_id, commit_by_subject(repo, "c1 "));
  EXPECT_EQ(changes[0].library.key(), "org.json:json");
  EXPECT_EQ(changes[0].action, DependencyAction::Added);
  EXPECT_EQ(changes[1].commit_id, commit_by_subject(repo, "c3 "));
  EXPECT_EQ(changes[1].library.key(), "com.google.code.gson:gson");
  EXPECT_EQ(changes[1].library.version, "2.8.5");
  EXPECT_EQ(changes[1].action, DependencyAction::Added);
  EXPECT_EQ(changes[2].commit_id, commit_by_subject(repo, "c7 "));
  EXPECT_EQ(changes[2].library.key(), "org.json:json");
  EXPECT_EQ(changes[2].action, DependencyAction::Removed);
  EXPECT_EQ(changes[2].previous_version, "20090211");
}

TEST(Corpus, ReindexIsByteIdentical) {
  TempDir tmp;
  const auto repo = tmp / "mig";
  migmap::test::build_fixture_repo("migration", repo);
  auto index = scan_repository(repo);
  auto changes = extract_dependency_changes(index);
  write_index(index, changes, tmp / "w1");
  write_index(scan_repository(repo), changes, tmp / "w2");
  EXPECT_EQ(dir_bytes(tmp / "w1" / "index" / "mig"), dir_bytes(tmp / "w2" / "index" / "mig"));

  auto back = load_index(tmp / "w1", "mig");
  EXPECT_EQ(back.commits, index.commits);
  EXPECT_EQ(back.first_parent_chain, index.first_parent_chain);
  auto deps = load_dependency_changes(tmp / "w1", "mig");
  ASSERT_EQ(deps.size(), changes.size());
  EXPECT_EQ(deps[2].previous_version, "20090211");
  EXPECT_EQ(list_indexed_projects(tmp / "w1"), std::vector<std::string>{"mig"});
}

TEST(Corpus, CorruptedIndexIsDataError) {
  TempDir tmp;
  const auto repo = tmp / "mig";
  migmap::test::build_fixture_repo("migration", repo);
  auto index = scan_repository(repo);
  write_index(index, extract_dependency_changes(index), tmp / "w");
  {
    std::ofstream out(tmp / "w" / "index" / "mig" / "commits.jsonl", std::ios::app);
    out << "{truncated\n";
  }
  EXPECT_THROW(load_index(tmp / "w", "mig"), DataError);
  EXPECT_THROW(load_index(tmp / "w", "nope"), DataError);
}

TEST(Corpus, FormatUtc) { EXPECT_EQ(format_utc(1600003600), "2020-09-13T13:26:40Z"); }

TEST(Pom, ParsesDependencies) {
  const char* xml = R"(<?xml version="1.0"?>
<project xmlns="http://maven.apache.org/POM/4.0.0">
  <dependencies>
    <dependency><groupId>org.json</groupId><artifactId>json</artifactId><version>20090211</version></dependency>
    <dependency><groupId>junit</groupId><artifactId>junit</artifactId></dependency>
  </dependencies>
  <dependencyManagement><dependencies>
    <dependency><groupId>com.google.code.gson</groupId><artifactId>gson</artifactId><version>2.8.5</version></dependency>
  </dependencies></dependencyManagement>
</project>)";
  auto deps = parse_pom_dependencies(xml);
  ASSERT_EQ(deps.size(), 3u);
  EXPECT_EQ(deps[0].key(), "org.json:json");
  EXPECT_EQ(deps[0].version, "20090211");
  EXPECT_EQ(deps[1].version, "");
  EXPECT_EQ(deps[2].key(), "com.google.code.gson:gson");
}

TEST(Pom, MalformedIsDataError) {
  EXPECT_THROW(parse_pom_dependencies("<project><dependencies>"), DataError);
  EXPECT_THROW(parse_pom_dependencies(
                   "<project><dependencies><dependency><groupId>x</groupId></dependency>"
                   "</dependencies></project>"),
               DataError);
}

TEST(Pom, ManifestPaths) {
  EXPECT_TRUE(is_manifest_path("pom.xml"));
  EXPECT_TRUE(is_manifest_path("module/pom.xml"));
  EXPECT_FALSE(is_manifest_path("src/pom.xml.bak"));
  EXPECT_FALSE(is_manifest_path("README.md"));
}
