#pragma once

#include <span>
#include <string>
#include <vector>

#include "migmap/api_index.hpp"
#include "migmap/corpus.hpp"
#include "migmap/fragment.hpp"

namespace migmap {

/// Replacement of a source (retired) library by a target library.
struct MigrationRule {
  LibraryRef source;
  LibraryRef target;

  /// Throws ConfigError when both sides name the same library.
  MigrationRule(LibraryRef source, LibraryRef target);
  std::string name() const { return source.key() + "->" + target.key(); }
};

/// One migration period inside one project history.
struct Segment {
  std::string project;
  std::string start_commit;
  std::string end_commit;
  std::string source_version;
  std::string target_version;
};

/// Finds migration periods for `rule` in one project. The end of a period is
/// the first commit after the target library was added at which no source
/// file references the source library any more (regardless of what the
/// manifest still declares); its start is the earliest commit between the
/// target's arrival and the end whose diff contains a valid fragment.
/// Periods whose source references never disappear are left open and skipped.
std::vector<Segment> detect_segments(const ProjectIndex& index,
                                     std::span<const DependencyChange> changes,
                                     const MigrationRule& rule, const ApiIndex& source_api,
                                     const ApiIndex& target_api);

/// Fragments of every first-parent diff from the segment's start to its end.
std::vector<Fragment> extract_fragments(const ProjectIndex& index, const Segment& segment,
                                        const ApiIndex& source_api, const ApiIndex& target_api);

/// Fragments of a single commit against its first parent.
std::vector<Fragment> extract_commit_fragments(const ProjectIndex& index,
                                               const std::string& commit,
                                               const ApiIndex& source_api,
                                               const ApiIndex& target_api);

}  // namespace migmap
