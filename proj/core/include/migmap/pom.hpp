#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "migmap/api_index.hpp"

namespace migmap {

/// Dependencies declared in a Maven `pom.xml` (project dependencies and the
/// dependencyManagement section), in document order. Throws DataError when
/// the document is not well-formed XML or a dependency lacks coordinates.
std::vector<LibraryRef> parse_pom_dependencies(std::string_view xml);

bool is_manifest_path(std::string_view path);

}  // namespace migmap
